#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "entsep/separability.hpp"
#include "entsep/tensor.hpp"

namespace entsep {

/// Operator I (x) ... (x) U (x) ... (x) I acting on one party.
/// U^dagger U must equal the identity within 1e-10.
struct LocalUnitary {
  std::size_t party = 0;
  Eigen::MatrixXcd entries;
};

void validate_unitary(const LocalUnitary& u);

/// Every line along u.party is multiplied by u.entries.
AmplitudeTensor apply_local_unitary(const AmplitudeTensor& t, const LocalUnitary& u);

/// Haar-distributed k x k unitary: QR of a complex Ginibre matrix with the
/// phases of R's diagonal moved into Q.
Eigen::MatrixXcd random_unitary(std::size_t k, std::mt19937_64& rng);

struct LoccStep {
  std::size_t party = 0;
  Verdict verdict_before = Verdict::separable;
  Verdict verdict_after = Verdict::separable;
  // Sorted scaled |det| of the minors along the acted-on axis.
  std::vector<double> axis_minors_before;
  std::vector<double> axis_minors_after;
  double axis_multiset_deviation = 0.0;  // max |before[i] - after[i]|
  std::size_t nonsingular_before = 0;
  std::size_t nonsingular_after = 0;
  double norm_change = 0.0;
};

struct LoccInvarianceReport {
  Verdict verdict_before = Verdict::separable;
  Verdict verdict_after = Verdict::separable;
  std::vector<LoccStep> steps;
  std::size_t verdict_changes = 0;  // steps whose verdict flipped
  double max_axis_multiset_deviation = 0.0;
  double max_norm_change = 0.0;

  bool violated() const noexcept {
    return verdict_changes > 0 || verdict_before != verdict_after;
  }
};

LoccInvarianceReport check_locc_invariance(const AmplitudeTensor& t,
                                           const std::vector<LocalUnitary>& us,
                                           double tol = default_tol);

}  // namespace entsep
