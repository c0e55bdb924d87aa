#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "entsep/bloch.hpp"
#include "entsep/separability.hpp"
#include "entsep/tensor.hpp"

namespace entsep {

// Spread of a ratio set. `infinite` marks the sentinel produced by a nonzero
// entry over a vanishing one; `value` is meaningless in that case.
struct Spread {
  double value = 0.0;
  bool infinite = false;

  friend bool operator<(const Spread& a, const Spread& b) noexcept {
    if (a.infinite != b.infinite) return b.infinite;
    return !a.infinite && a.value < b.value;
  }
};

struct AxisSpread {
  std::size_t axis = 0;
  Spread spread;
  double max_scaled_minor = 0.0;
};

struct RatioSpread {
  Spread mu;                    // max over axes of the ratio-set diameter
  double mu_regularized = 0.0;  // max scaled minor, always in [0, 1]
  std::vector<AxisSpread> per_axis;
};

/// For every pair of parallel lines (L, M), the ratios L_s / M_s over axis
/// positions are collected and their diameter in the complex plane taken;
/// mu is the largest diameter over all pairs and axes. Positions where both
/// entries vanish are skipped, x/0 with x != 0 yields the infinity sentinel,
/// and pairs involving a numerically zero line are proportional by definition.
RatioSpread ratio_spread(const AmplitudeTensor& t, double tol = default_tol);

struct NonsingularCount {
  std::size_t total = 0;
  std::vector<std::size_t> per_axis;
};

// Minors whose scaled magnitude exceeds tol.
NonsingularCount nonsingular_count(const AmplitudeTensor& t, double tol = default_tol);

struct MeasureReport {
  Spread mu;
  double mu_regularized = 0.0;
  std::size_t nonsingular_count = 0;
  std::vector<std::size_t> per_axis_counts;
  std::optional<double> distance;
};

// mu, mu_regularized and the nonsingular counts; no distance search.
MeasureReport measure_report(const AmplitudeTensor& t, double tol = default_tol);

struct SearchParams {
  std::size_t grid_resolution = 8;
  std::size_t refinement_iterations = 20;
  std::uint64_t seed = 0;
  std::uint64_t table_cap = 100'000'000;  // guard on ((r + 1) r)^n
};

struct NearestSeparable {
  double distance = 0.0;
  BlochAngles angles;
  AmplitudeTensor state;  // synthesize_product(angles)
};

/// min over the global phase gamma of || t - e^{i gamma} p ||.
double phase_aligned_distance(const AmplitudeTensor& t, const AmplitudeTensor& p);

/// Upper bound on the distance from a unit-norm qubit state to the set of
/// product states: best point of the Bloch-angle table, then
/// `refinement_iterations` sweeps of exact per-party coordinate descent from
/// that point and from a few seeded random starts.
NearestSeparable nearest_separable(const AmplitudeTensor& t, const SearchParams& params = {});

struct TrajectorySample {
  std::size_t index = 0;
  MeasureReport report;
  Verdict verdict = Verdict::separable;
};

struct TrajectoryScan {
  std::vector<TrajectorySample> samples;
  std::vector<std::size_t> crossings;  // i with verdict(i) != verdict(i - 1)
};

TrajectoryScan scan_trajectory(std::span<const AmplitudeTensor> states,
                               double tol = default_tol);

}  // namespace entsep
