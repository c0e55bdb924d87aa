#include "entsep/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "entsep/error.hpp"

namespace entsep {

namespace {

std::vector<std::size_t> strides_for(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t p = dims.size(); p-- > 1;) strides[p - 1] = strides[p] * dims[p];
  return strides;
}

std::size_t checked_product(const std::vector<std::size_t>& dims) {
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d < 2) throw ValidationError("local dimension " + std::to_string(d) + " is below 2");
    if (total > max_tensor_size / d)
      throw ResourceError("tensor exceeds the supported size of " +
                          std::to_string(max_tensor_size) + " amplitudes");
    total *= d;
  }
  return total;
}

void check_axis(const AmplitudeTensor& t, std::size_t axis) {
  if (axis >= t.n_parties())
    throw BoundsError("axis " + std::to_string(axis) + " out of range for " +
                      std::to_string(t.n_parties()) + " parties");
}

}  // namespace

AmplitudeTensor::AmplitudeTensor(std::vector<std::size_t> local_dims,
                                 std::vector<Complex> data)
    : dims_(std::move(local_dims)), data_(std::move(data)) {
  if (dims_.empty()) throw ValidationError("a tensor needs at least one party");
  const std::size_t expected = checked_product(dims_);
  if (data_.size() != expected)
    throw ValidationError("amplitude count mismatch: expected " + std::to_string(expected) +
                          " entries for the given local_dims, got " +
                          std::to_string(data_.size()));
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i].real()) || !std::isfinite(data_[i].imag()))
      throw ValidationError("amplitude " + std::to_string(i) + " is not finite");
  }
  strides_ = strides_for(dims_);
}

AmplitudeTensor AmplitudeTensor::from_amplitudes(std::size_t n_parties,
                                                 std::vector<std::size_t> local_dims,
                                                 std::vector<Complex> data) {
  if (n_parties == 0) throw ValidationError("n_parties must be positive");
  if (local_dims.size() != n_parties)
    throw ValidationError("local_dims has " + std::to_string(local_dims.size()) +
                          " entries but n_parties is " + std::to_string(n_parties));
  return AmplitudeTensor(std::move(local_dims), std::move(data));
}

AmplitudeTensor AmplitudeTensor::basis_state(std::vector<std::size_t> local_dims,
                                             std::span<const std::size_t> index) {
  const std::size_t total = checked_product(local_dims);
  AmplitudeTensor t(std::move(local_dims), std::vector<Complex>(total));
  t.data_[t.flat_index(index)] = 1.0;
  return t;
}

std::size_t AmplitudeTensor::flat_index(std::span<const std::size_t> index) const {
  if (index.size() != dims_.size())
    throw BoundsError("multi-index has " + std::to_string(index.size()) +
                      " coordinates, tensor has " + std::to_string(dims_.size()) + " parties");
  std::size_t flat = 0;
  for (std::size_t p = 0; p < dims_.size(); ++p) {
    if (index[p] >= dims_[p])
      throw BoundsError("coordinate " + std::to_string(index[p]) + " out of range for party " +
                        std::to_string(p));
    flat += index[p] * strides_[p];
  }
  return flat;
}

const Complex& AmplitudeTensor::at(std::span<const std::size_t> index) const {
  return data_[flat_index(index)];
}

MultiIndex AmplitudeTensor::multi_index(std::size_t flat) const {
  if (flat >= data_.size()) throw BoundsError("flat index out of range");
  MultiIndex idx(dims_.size());
  for (std::size_t p = 0; p < dims_.size(); ++p) {
    idx[p] = flat / strides_[p];
    flat %= strides_[p];
  }
  return idx;
}

bool AmplitudeTensor::all_qubits() const noexcept {
  return std::all_of(dims_.begin(), dims_.end(), [](std::size_t d) { return d == 2; });
}

bool AmplitudeTensor::same_shape(const AmplitudeTensor& other) const noexcept {
  return dims_ == other.dims_;
}

double AmplitudeTensor::squared_norm() const noexcept {
  double sq = 0.0;
  for (const Complex& c : data_) sq += std::norm(c);
  return sq;
}

double AmplitudeTensor::norm() const noexcept { return std::sqrt(squared_norm()); }

bool AmplitudeTensor::normalized(double tol) const noexcept {
  return std::abs(norm() - 1.0) <= tol;
}

AmplitudeTensor AmplitudeTensor::scaled(Complex factor) const {
  std::vector<Complex> out(data_);
  for (Complex& c : out) c *= factor;
  return AmplitudeTensor(dims_, std::move(out));
}

double norm(const AmplitudeTensor& t) noexcept { return t.norm(); }

AmplitudeTensor tensor_product(const AmplitudeTensor& a, const AmplitudeTensor& b) {
  std::vector<std::size_t> dims(a.local_dims().begin(), a.local_dims().end());
  dims.insert(dims.end(), b.local_dims().begin(), b.local_dims().end());
  checked_product(dims);
  std::vector<Complex> data;
  data.reserve(a.size() * b.size());
  for (const Complex& x : a.data())
    for (const Complex& y : b.data()) data.push_back(x * y);
  return AmplitudeTensor(std::move(dims), std::move(data));
}

AmplitudeTensor permute_parties(const AmplitudeTensor& t,
                                std::span<const std::size_t> order) {
  const std::size_t n = t.n_parties();
  if (order.size() != n) throw ValidationError("permutation length does not match party count");
  std::vector<bool> seen(n, false);
  for (std::size_t p : order) {
    if (p >= n || seen[p]) throw ValidationError("party order is not a permutation");
    seen[p] = true;
  }
  std::vector<std::size_t> dims(n);
  for (std::size_t i = 0; i < n; ++i) dims[i] = t.dim(order[i]);

  std::vector<Complex> data(t.size());
  MultiIndex old_idx(n);
  const auto new_strides = strides_for(dims);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    std::size_t rem = flat;
    for (std::size_t p = 0; p < n; ++p) {
      old_idx[p] = rem / t.stride(p);
      rem %= t.stride(p);
    }
    std::size_t target = 0;
    for (std::size_t i = 0; i < n; ++i) target += old_idx[order[i]] * new_strides[i];
    data[target] = t[flat];
  }
  return AmplitudeTensor(std::move(dims), std::move(data));
}

// ---------------------------------------------------------------------------

std::size_t line_count(const AmplitudeTensor& t, std::size_t axis) {
  check_axis(t, axis);
  return t.size() / t.dim(axis);
}

std::size_t line_base(const AmplitudeTensor& t, std::size_t axis, std::size_t ordinal) {
  check_axis(t, axis);
  // Decompose the ordinal over the other parties, last party fastest.
  std::size_t base = 0;
  for (std::size_t p = t.n_parties(); p-- > 0;) {
    if (p == axis) continue;
    base += (ordinal % t.dim(p)) * t.stride(p);
    ordinal /= t.dim(p);
  }
  if (ordinal != 0) throw BoundsError("line ordinal out of range");
  return base;
}

MultiIndex line_fixed_index(const AmplitudeTensor& t, std::size_t axis, std::size_t ordinal) {
  MultiIndex full = t.multi_index(line_base(t, axis, ordinal));
  full.erase(full.begin() + static_cast<std::ptrdiff_t>(axis));
  return full;
}

Line line(const AmplitudeTensor& t, std::size_t axis, std::span<const std::size_t> fixed_index) {
  check_axis(t, axis);
  if (fixed_index.size() + 1 != t.n_parties())
    throw BoundsError("fixed index needs " + std::to_string(t.n_parties() - 1) +
                      " coordinates, got " + std::to_string(fixed_index.size()));
  MultiIndex full(t.n_parties());
  for (std::size_t p = 0, q = 0; p < t.n_parties(); ++p) {
    if (p == axis) continue;
    full[p] = fixed_index[q++];
  }
  full[axis] = 0;
  const std::size_t base = t.flat_index(full);

  Line out;
  out.axis = axis;
  out.fixed_index.assign(fixed_index.begin(), fixed_index.end());
  out.entries.reserve(t.dim(axis));
  for (std::size_t s = 0; s < t.dim(axis); ++s) out.entries.push_back(t[base + s * t.stride(axis)]);
  return out;
}

std::vector<Line> lines(const AmplitudeTensor& t, std::size_t axis) {
  const std::size_t n = line_count(t, axis);
  std::vector<Line> out;
  out.reserve(n);
  for (std::size_t l = 0; l < n; ++l) out.push_back(line(t, axis, line_fixed_index(t, axis, l)));
  return out;
}

Minor to_minor(const AmplitudeTensor& t, const MinorView& view) {
  Minor m;
  m.axis = view.axis;
  m.line_a = line_fixed_index(t, view.axis, view.line_a);
  m.line_b = line_fixed_index(t, view.axis, view.line_b);
  m.positions = {view.s, view.t};
  m.entries = view.entries;
  m.det = view.det;
  return m;
}

std::vector<Minor> enumerate_axis_minors(const AmplitudeTensor& t, std::size_t axis) {
  std::vector<Minor> out;
  out.reserve(axis_minor_count(t, axis));
  visit_axis_minors(t, axis, [&](const MinorView& v) { out.push_back(to_minor(t, v)); });
  return out;
}

std::vector<Minor> all_minors(const AmplitudeTensor& t) {
  std::vector<Minor> out;
  out.reserve(all_minor_count(t));
  for (std::size_t axis = 0; axis < t.n_parties(); ++axis) {
    auto part = enumerate_axis_minors(t, axis);
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

std::size_t axis_minor_count(const AmplitudeTensor& t, std::size_t axis) {
  const std::size_t lines_n = line_count(t, axis);
  const std::size_t k = t.dim(axis);
  return (lines_n * (lines_n - 1) / 2) * (k * (k - 1) / 2);
}

std::size_t all_minor_count(const AmplitudeTensor& t) {
  std::size_t total = 0;
  for (std::size_t axis = 0; axis < t.n_parties(); ++axis) total += axis_minor_count(t, axis);
  return total;
}

// ---------------------------------------------------------------------------

UnfoldingMatrix unfold(const AmplitudeTensor& t, std::span<const std::size_t> row_parties) {
  const std::size_t n = t.n_parties();
  std::vector<bool> is_row(n, false);
  for (std::size_t p : row_parties) {
    if (p >= n) throw BoundsError("row party " + std::to_string(p) + " out of range");
    if (is_row[p]) throw ValidationError("row party " + std::to_string(p) + " listed twice");
    is_row[p] = true;
  }
  if (row_parties.empty() || row_parties.size() == n)
    throw ValidationError("row parties must be a non-empty proper subset of the parties");

  UnfoldingMatrix m;
  for (std::size_t p = 0; p < n; ++p) (is_row[p] ? m.row_parties : m.col_parties).push_back(p);

  std::size_t rows = 1, cols = 1;
  for (std::size_t p : m.row_parties) rows *= t.dim(p);
  for (std::size_t p : m.col_parties) cols *= t.dim(p);
  m.matrix.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));

  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    std::size_t rem = flat, r = 0, c = 0;
    for (std::size_t p = 0; p < n; ++p) {
      const std::size_t coord = rem / t.stride(p);
      rem %= t.stride(p);
      if (is_row[p])
        r = r * t.dim(p) + coord;
      else
        c = c * t.dim(p) + coord;
    }
    m.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = t[flat];
  }
  return m;
}

AmplitudeTensor refold(const UnfoldingMatrix& m, std::span<const std::size_t> local_dims) {
  const std::size_t n = local_dims.size();
  if (m.row_parties.size() + m.col_parties.size() != n)
    throw ValidationError("unfolding parties do not match local_dims");
  std::vector<std::size_t> dims(local_dims.begin(), local_dims.end());
  const std::size_t total = checked_product(dims);
  if (static_cast<std::size_t>(m.matrix.size()) != total)
    throw ValidationError("unfolding matrix size does not match local_dims");

  std::vector<bool> is_row(n, false);
  for (std::size_t p : m.row_parties) is_row.at(p) = true;
  const auto strides = strides_for(dims);

  std::vector<Complex> data(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat, r = 0, c = 0;
    for (std::size_t p = 0; p < n; ++p) {
      const std::size_t coord = rem / strides[p];
      rem %= strides[p];
      if (is_row[p])
        r = r * dims[p] + coord;
      else
        c = c * dims[p] + coord;
    }
    data[flat] = m.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  return AmplitudeTensor(std::move(dims), std::move(data));
}

}  // namespace entsep
