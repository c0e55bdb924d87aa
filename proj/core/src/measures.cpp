#include "entsep/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "entsep/error.hpp"

namespace entsep {

namespace {

constexpr std::size_t random_restarts = 4;

void require_nonzero(const AmplitudeTensor& t) {
  if (!(t.norm() > 0.0)) throw PreconditionError("measures are undefined for the zero tensor");
}

double diameter(const std::vector<Complex>& ratios) {
  double d = 0.0;
  for (std::size_t i = 0; i < ratios.size(); ++i)
    for (std::size_t j = i + 1; j < ratios.size(); ++j) d = std::max(d, std::abs(ratios[i] - ratios[j]));
  return d;
}

Spread axis_spread(const AmplitudeTensor& t, std::size_t axis, double tol) {
  const double len = t.norm();
  const std::size_t n_lines = line_count(t, axis);
  const std::size_t k = t.dim(axis);
  const std::size_t step = t.stride(axis);

  std::vector<std::size_t> bases(n_lines);
  std::vector<double> norms(n_lines);
  for (std::size_t l = 0; l < n_lines; ++l) {
    bases[l] = line_base(t, axis, l);
    double sq = 0.0;
    for (std::size_t s = 0; s < k; ++s) sq += std::norm(t[bases[l] + s * step]);
    norms[l] = std::sqrt(sq);
  }

  Spread out;
  std::vector<Complex> ratios;
  for (std::size_t a = 0; a < n_lines; ++a) {
    if (norms[a] <= tol * len) continue;
    for (std::size_t b = a + 1; b < n_lines; ++b) {
      if (norms[b] <= tol * len) continue;
      ratios.clear();
      bool infinite = false;
      for (std::size_t s = 0; s < k && !infinite; ++s) {
        const Complex l = t[bases[a] + s * step];
        const Complex m = t[bases[b] + s * step];
        if (std::abs(m) > tol * norms[b])
          ratios.push_back(l / m);
        else if (std::abs(l) > tol * len)
          infinite = true;
      }
      if (infinite) return Spread{0.0, true};
      out.value = std::max(out.value, diameter(ratios));
    }
  }
  return out;
}

// Per-party unit 2-vectors of a product state.
using QubitFactors = std::vector<std::array<Complex, 2>>;

QubitFactors factors_from_angles(const BlochAngles& angles) {
  QubitFactors q(angles.size());
  for (std::size_t j = 0; j < angles.size(); ++j)
    q[j] = {Complex(std::cos(angles[j].theta / 2.0)),
            std::polar(std::sin(angles[j].theta / 2.0), angles[j].phi)};
  return q;
}

BlochAngles angles_from_factors(const QubitFactors& q) {
  BlochAngles angles(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) {
    const double a = std::abs(q[j][0]);
    const double b = std::abs(q[j][1]);
    angles[j].theta = std::clamp(2.0 * std::atan2(b, a), 0.0, std::numbers::pi);
    double phi = 0.0;
    if (b > 0.0) phi = std::arg(q[j][1]) - (a > 0.0 ? std::arg(q[j][0]) : 0.0);
    phi = std::fmod(phi, 2.0 * std::numbers::pi);
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
    angles[j].phi = phi;
  }
  return angles;
}

// Contracts every party except `keep` with conj(q); the result is the
// 2-vector v with <product|t> = sum_i conj(q_keep[i]) v[i].
std::array<Complex, 2> environment(const AmplitudeTensor& t, const QubitFactors& q,
                                   std::size_t keep) {
  const std::size_t n = t.n_parties();
  std::array<Complex, 2> v{};
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    Complex w = t[flat];
    std::size_t kept_bit = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t bit = (flat >> (n - 1 - j)) & 1u;
      if (j == keep)
        kept_bit = bit;
      else
        w *= std::conj(q[j][bit]);
    }
    v[kept_bit] += w;
  }
  return v;
}

struct GridBest {
  double overlap = -1.0;
  std::vector<std::size_t> digits;
};

// Depth-first contraction over the grid: level j holds the partial
// contraction of t with the chosen conj factors of parties 0..j-1.
void grid_search(const std::vector<std::array<Complex, 2>>& candidates,
                 std::vector<std::vector<Complex>>& levels, std::vector<std::size_t>& digits,
                 std::size_t depth, GridBest& best) {
  const std::size_t n = digits.size();
  if (depth == n) {
    const double ov = std::abs(levels[n][0]);
    if (ov > best.overlap) {
      best.overlap = ov;
      best.digits = digits;
    }
    return;
  }
  const std::vector<Complex>& in = levels[depth];
  std::vector<Complex>& out = levels[depth + 1];
  const std::size_t half = in.size() / 2;
  for (std::size_t d = 0; d < candidates.size(); ++d) {
    const Complex c0 = std::conj(candidates[d][0]);
    const Complex c1 = std::conj(candidates[d][1]);
    for (std::size_t i = 0; i < half; ++i) out[i] = c0 * in[i] + c1 * in[half + i];
    digits[depth] = d;
    grid_search(candidates, levels, digits, depth + 1, best);
  }
}

}  // namespace

RatioSpread ratio_spread(const AmplitudeTensor& t, double tol) {
  require_nonzero(t);
  const double zero = zero_line_norm(t, tol);
  RatioSpread out;
  for (std::size_t axis = 0; axis < t.n_parties(); ++axis) {
    AxisSpread detail;
    detail.axis = axis;
    detail.spread = axis_spread(t, axis, tol);
    visit_axis_minors(t, axis, [&](const MinorView& m) {
      detail.max_scaled_minor = std::max(detail.max_scaled_minor, scaled_minor(m, zero));
    });
    if (out.mu < detail.spread) out.mu = detail.spread;
    out.mu_regularized = std::max(out.mu_regularized, detail.max_scaled_minor);
    out.per_axis.push_back(detail);
  }
  out.mu_regularized = std::min(out.mu_regularized, 1.0);
  return out;
}

NonsingularCount nonsingular_count(const AmplitudeTensor& t, double tol) {
  require_nonzero(t);
  const double zero = zero_line_norm(t, tol);
  NonsingularCount out;
  out.per_axis.assign(t.n_parties(), 0);
  for (std::size_t axis = 0; axis < t.n_parties(); ++axis) {
    visit_axis_minors(t, axis, [&](const MinorView& m) {
      if (scaled_minor(m, zero) > tol) ++out.per_axis[axis];
    });
    out.total += out.per_axis[axis];
  }
  return out;
}

MeasureReport measure_report(const AmplitudeTensor& t, double tol) {
  const RatioSpread spread = ratio_spread(t, tol);
  const NonsingularCount count = nonsingular_count(t, tol);
  MeasureReport r;
  r.mu = spread.mu;
  r.mu_regularized = spread.mu_regularized;
  r.nonsingular_count = count.total;
  r.per_axis_counts = count.per_axis;
  return r;
}

double phase_aligned_distance(const AmplitudeTensor& t, const AmplitudeTensor& p) {
  if (!t.same_shape(p)) throw ValidationError("distance needs tensors of the same shape");
  Complex overlap = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) overlap += std::conj(p[i]) * t[i];
  const double sq = t.squared_norm() + p.squared_norm() - 2.0 * std::abs(overlap);
  return std::sqrt(std::max(sq, 0.0));
}

NearestSeparable nearest_separable(const AmplitudeTensor& t, const SearchParams& params) {
  if (!t.all_qubits()) throw PreconditionError("nearest separable search needs qubit parties");
  if (std::abs(t.norm() - 1.0) > 1e-6)
    throw PreconditionError("nearest separable search needs a unit-norm state (norm " +
                            std::to_string(t.norm()) + ")");
  if (params.grid_resolution == 0) throw ValidationError("grid_resolution must be at least 1");
  const std::size_t n = t.n_parties();
  const auto table = separable_table_size(n, params.grid_resolution);
  if (!table || *table > params.table_cap)
    throw ResourceError("distance grid would have more than " + std::to_string(params.table_cap) +
                        " points");

  // Grid candidates for a single party, in separable_table order.
  const std::size_t r = params.grid_resolution;
  std::vector<std::array<Complex, 2>> candidates;
  std::vector<QubitAngles> candidate_angles;
  for (std::size_t k = 0; k <= r; ++k) {
    const double theta = k == r ? std::numbers::pi : static_cast<double>(k) * std::numbers::pi / r;
    for (std::size_t m = 0; m < r; ++m) {
      const double phi = static_cast<double>(m) * 2.0 * std::numbers::pi / r;
      candidate_angles.push_back({theta, phi});
      candidates.push_back({Complex(std::cos(theta / 2.0)), std::polar(std::sin(theta / 2.0), phi)});
    }
  }

  std::vector<std::vector<Complex>> levels(n + 1);
  for (std::size_t j = 0; j <= n; ++j) levels[j].resize(std::size_t{1} << (n - j));
  std::copy(t.data().begin(), t.data().end(), levels[0].begin());
  std::vector<std::size_t> digits(n, 0);
  GridBest grid;
  grid_search(candidates, levels, digits, 0, grid);

  BlochAngles grid_angles(n);
  for (std::size_t j = 0; j < n; ++j) grid_angles[j] = candidate_angles[grid.digits[j]];

  NearestSeparable best{phase_aligned_distance(t, synthesize_product(grid_angles)), grid_angles,
                        synthesize_product(grid_angles)};

  auto consider = [&](const BlochAngles& angles) {
    AmplitudeTensor p = synthesize_product(angles);
    const double d = phase_aligned_distance(t, p);
    if (d < best.distance) best = NearestSeparable{d, angles, std::move(p)};
  };

  std::vector<QubitFactors> starts;
  starts.push_back(factors_from_angles(grid_angles));
  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> gauss;
  for (std::size_t s = 0; s < random_restarts; ++s) {
    QubitFactors q(n);
    for (auto& f : q) {
      f = {Complex(gauss(rng), gauss(rng)), Complex(gauss(rng), gauss(rng))};
      const double len = std::sqrt(std::norm(f[0]) + std::norm(f[1]));
      f[0] /= len;
      f[1] /= len;
    }
    starts.push_back(std::move(q));
  }

  for (std::size_t s = 0; s < starts.size(); ++s) {
    QubitFactors q = std::move(starts[s]);
    if (s > 0) consider(angles_from_factors(q));
    for (std::size_t sweep = 0; sweep < params.refinement_iterations; ++sweep) {
      for (std::size_t j = 0; j < n; ++j) {
        const auto v = environment(t, q, j);
        const double len = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
        if (!(len > 0.0)) continue;
        q[j] = {v[0] / len, v[1] / len};
        consider(angles_from_factors(q));
      }
    }
  }
  return best;
}

TrajectoryScan scan_trajectory(std::span<const AmplitudeTensor> states, double tol) {
  TrajectoryScan scan;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!states[i].same_shape(states.front()))
      throw ValidationError("trajectory sample " + std::to_string(i) +
                            " has a different shape from sample 0");
    TrajectorySample sample;
    sample.index = i;
    sample.report = measure_report(states[i], tol);
    sample.verdict = sample.report.nonsingular_count == 0 ? Verdict::separable : Verdict::entangled;
    if (i > 0 && sample.verdict != scan.samples.back().verdict) scan.crossings.push_back(i);
    scan.samples.push_back(std::move(sample));
  }
  return scan;
}

}  // namespace entsep
