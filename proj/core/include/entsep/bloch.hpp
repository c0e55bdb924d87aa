#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "entsep/tensor.hpp"

namespace entsep {

// Qubit j is cos(theta/2)|0> + exp(i phi) sin(theta/2)|1>,
// 0 <= theta <= pi and 0 <= phi < 2 pi.
struct QubitAngles {
  double theta = 0.0;
  double phi = 0.0;
};

using BlochAngles = std::vector<QubitAngles>;

// Throws ValidationError when an angle is out of range or not finite.
void validate_angles(const BlochAngles& angles);

/// Per-basis-index residuals |e^{i gamma} p - alpha| between the product state
/// p predicted by some angles and the actual amplitudes alpha. gamma is the
/// global phase that zeroes the residual phase at the anchor index (largest
/// |alpha|), or 0 in strict mode.
struct BlochResidualReport {
  std::vector<double> residuals;
  double max_residual = 0.0;
  double global_phase = 0.0;  // radians in [0, 2pi)
  std::size_t anchor_index = 0;
};

struct BlochOptions {
  double tol = 1e-8;
  bool strict = false;  // no global-phase alignment
};

/// Tensor with entry prod_j [cos(theta_j/2) or e^{i phi_j} sin(theta_j/2)].
AmplitudeTensor synthesize_product(const BlochAngles& angles);

BlochResidualReport verify_bloch_equations(const AmplitudeTensor& t, const BlochAngles& angles,
                                           bool strict = false);

struct AngleReconstruction {
  BlochAngles angles;  // candidate angles, filled on success and on failure
  BlochResidualReport report;
  bool success = false;
};

/// Solves the Bloch equation system for a qubit state:
///   cos^2(theta_j/2) = sum of |alpha|^2 over indices with i_j = 0,
///   phi_j from the phase step between the anchor amplitude and its
///   neighbour across party j (0 when that neighbour vanishes).
/// Succeeds when every residual is <= tol. Throws PreconditionError for a
/// zero tensor, non-qubit parties or a norm further than tol from 1.
AngleReconstruction reconstruct_angles(const AmplitudeTensor& t, BlochOptions opts = {});

struct SeparableTableEntry {
  BlochAngles angles;
  AmplitudeTensor state;
};

// Default cap on the number of emitted table entries.
inline constexpr std::uint64_t default_table_cap = 5'000'000;

/// ((r + 1) * r)^n, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> separable_table_size(std::size_t n_parties, std::size_t resolution);

/// Bloch-angle grid theta_j in {k pi / r}, phi_j in {2 pi k / r}, emitted in
/// odometer order (party 0 slowest, theta before phi). Throws ResourceError
/// when the table would exceed `cap` entries.
void separable_table(std::size_t n_parties, std::size_t resolution,
                     const std::function<void(const SeparableTableEntry&)>& sink,
                     std::uint64_t cap = default_table_cap);

}  // namespace entsep
