#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace entsep {

using Complex = std::complex<double>;
using MultiIndex = std::vector<std::size_t>;

// Largest accepted number of amplitudes (16 qubits).
inline constexpr std::size_t max_tensor_size = std::size_t{1} << 16;

/// Multimatrix of state coefficients. Entry (i1, ..., in) is stored at the
/// lexicographic position with the first party varying slowest, so the flat
/// order matches the basis labels |i1 i2 ... in>.
///
/// Instances are immutable once constructed; operations that "modify" a
/// tensor return a new one.
class AmplitudeTensor {
 public:
  /// Throws ValidationError on a length mismatch, a dimension below 2 or a
  /// non-finite entry, and ResourceError when the size exceeds
  /// max_tensor_size.
  AmplitudeTensor(std::vector<std::size_t> local_dims, std::vector<Complex> data);

  static AmplitudeTensor from_amplitudes(std::size_t n_parties,
                                         std::vector<std::size_t> local_dims,
                                         std::vector<Complex> data);

  // Unit amplitude at `index`, zero elsewhere.
  static AmplitudeTensor basis_state(std::vector<std::size_t> local_dims,
                                     std::span<const std::size_t> index);

  std::size_t n_parties() const noexcept { return dims_.size(); }
  std::span<const std::size_t> local_dims() const noexcept { return dims_; }
  std::size_t dim(std::size_t party) const { return dims_.at(party); }
  std::size_t stride(std::size_t party) const { return strides_.at(party); }
  std::size_t size() const noexcept { return data_.size(); }
  std::span<const Complex> data() const noexcept { return data_; }
  const Complex& operator[](std::size_t flat) const { return data_[flat]; }

  const Complex& at(std::span<const std::size_t> index) const;
  std::size_t flat_index(std::span<const std::size_t> index) const;
  MultiIndex multi_index(std::size_t flat) const;

  bool all_qubits() const noexcept;
  bool same_shape(const AmplitudeTensor& other) const noexcept;

  double squared_norm() const noexcept;
  double norm() const noexcept;
  bool normalized(double tol = 1e-9) const noexcept;

  AmplitudeTensor scaled(Complex factor) const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::vector<Complex> data_;
};

double norm(const AmplitudeTensor& t) noexcept;

/// Kronecker product; parties of `a` come first.
AmplitudeTensor tensor_product(const AmplitudeTensor& a, const AmplitudeTensor& b);

/// New party i is old party order[i]. `order` must be a permutation.
AmplitudeTensor permute_parties(const AmplitudeTensor& t,
                                std::span<const std::size_t> order);

// ---------------------------------------------------------------------------
// Lines and minors

struct Line {
  std::size_t axis = 0;
  MultiIndex fixed_index;  // coordinates of every party except `axis`
  std::vector<Complex> entries;
};

Line line(const AmplitudeTensor& t, std::size_t axis,
          std::span<const std::size_t> fixed_index);

// Number of lines parallel to `axis`.
std::size_t line_count(const AmplitudeTensor& t, std::size_t axis);

// Fixed index of the `ordinal`-th line along `axis` in lexicographic order.
MultiIndex line_fixed_index(const AmplitudeTensor& t, std::size_t axis,
                            std::size_t ordinal);

// Flat offset of entry 0 of the `ordinal`-th line along `axis`.
std::size_t line_base(const AmplitudeTensor& t, std::size_t axis,
                      std::size_t ordinal);

std::vector<Line> lines(const AmplitudeTensor& t, std::size_t axis);

/// 2x2 determinant from two parallel lines a, b at axis positions s < t.
/// entries = {a[s], a[t], b[s], b[t]}.
struct Minor {
  std::size_t axis = 0;
  MultiIndex line_a;
  MultiIndex line_b;
  std::pair<std::size_t, std::size_t> positions;
  std::array<Complex, 4> entries;
  Complex det;
};

// Lightweight minor handle used during enumeration: lines are identified by
// their ordinal along the axis and carry their full norms.
struct MinorView {
  std::size_t axis = 0;
  std::size_t line_a = 0;
  std::size_t line_b = 0;
  std::size_t s = 0;
  std::size_t t = 0;
  std::array<Complex, 4> entries;
  Complex det;
  double norm_a = 0.0;
  double norm_b = 0.0;
};

/// Calls `fn(const MinorView&)` for every minor along `axis`, ordered
/// lexicographically by (line_a, line_b, s, t) with line_a < line_b.
template <class Fn>
void visit_axis_minors(const AmplitudeTensor& tensor, std::size_t axis, Fn&& fn);

template <class Fn>
void visit_all_minors(const AmplitudeTensor& tensor, Fn&& fn) {
  for (std::size_t axis = 0; axis < tensor.n_parties(); ++axis)
    visit_axis_minors(tensor, axis, fn);
}

Minor to_minor(const AmplitudeTensor& t, const MinorView& view);

std::vector<Minor> enumerate_axis_minors(const AmplitudeTensor& t, std::size_t axis);
std::vector<Minor> all_minors(const AmplitudeTensor& t);

// Minor counts without materialising anything.
std::size_t axis_minor_count(const AmplitudeTensor& t, std::size_t axis);
std::size_t all_minor_count(const AmplitudeTensor& t);

// ---------------------------------------------------------------------------
// Unfoldings

/// Tensor reshaped into a matrix with rows indexed by `row_parties` and
/// columns by the remaining parties, both in ascending party order.
struct UnfoldingMatrix {
  std::vector<std::size_t> row_parties;
  std::vector<std::size_t> col_parties;
  Eigen::MatrixXcd matrix;
};

UnfoldingMatrix unfold(const AmplitudeTensor& t,
                       std::span<const std::size_t> row_parties);

AmplitudeTensor refold(const UnfoldingMatrix& m,
                       std::span<const std::size_t> local_dims);

// ---------------------------------------------------------------------------

template <class Fn>
void visit_axis_minors(const AmplitudeTensor& tensor, std::size_t axis, Fn&& fn) {
  const std::size_t n_lines = line_count(tensor, axis);
  const std::size_t k = tensor.dim(axis);
  const std::size_t step = tensor.stride(axis);
  const auto data = tensor.data();

  std::vector<std::size_t> bases(n_lines);
  std::vector<double> norms(n_lines);
  for (std::size_t l = 0; l < n_lines; ++l) {
    bases[l] = line_base(tensor, axis, l);
    double sq = 0.0;
    for (std::size_t p = 0; p < k; ++p) sq += std::norm(data[bases[l] + p * step]);
    norms[l] = std::sqrt(sq);
  }

  MinorView view;
  view.axis = axis;
  for (std::size_t a = 0; a < n_lines; ++a) {
    for (std::size_t b = a + 1; b < n_lines; ++b) {
      view.line_a = a;
      view.line_b = b;
      view.norm_a = norms[a];
      view.norm_b = norms[b];
      for (std::size_t s = 0; s < k; ++s) {
        for (std::size_t t = s + 1; t < k; ++t) {
          view.s = s;
          view.t = t;
          view.entries = {data[bases[a] + s * step], data[bases[a] + t * step],
                          data[bases[b] + s * step], data[bases[b] + t * step]};
          view.det = view.entries[0] * view.entries[3] - view.entries[1] * view.entries[2];
          fn(std::as_const(view));
        }
      }
    }
  }
}

}  // namespace entsep
