#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "entsep/tensor.hpp"

namespace entsep {

inline constexpr double default_tol = 1e-8;

// Bipartition enumeration in entanglement_structure is exponential.
inline constexpr std::size_t max_structure_parties = 12;

enum class Verdict { separable, entangled };

std::string_view to_string(Verdict v) noexcept;

/// |det| / (|line_a| * |line_b| + 1e-300), or 0 when either line has norm at
/// most `zero_line_norm`. A numerically zero line is proportional to every
/// other line, so its minors count as singular.
double scaled_minor(const MinorView& m, double zero_line_norm) noexcept;

// Threshold below which a line of `t` is treated as zero at tolerance `tol`.
inline double zero_line_norm(const AmplitudeTensor& t, double tol) noexcept {
  return tol * t.norm();
}

struct SeparabilityVerdict {
  Verdict verdict = Verdict::separable;
  double max_scaled_minor = 0.0;
  std::optional<Minor> witness;  // maximiser; empty when there are no minors
  double tol = default_tol;
};

/// Line-proportionality test: separable iff every same-axis minor has a
/// scaled magnitude <= tol. Throws PreconditionError on a zero tensor.
SeparabilityVerdict is_separable_minors(const AmplitudeTensor& t, double tol = default_tol);

struct PartyFactorization {
  std::size_t party = 0;
  AmplitudeTensor factor;    // single-party, unit norm, largest entry real >= 0
  AmplitudeTensor residual;  // remaining parties; factor (x) residual == t
};

struct PartyFactorResult {
  std::optional<PartyFactorization> value;
  // Max scaled minor of unfold(t, {party}); on success an upper bound <= tol.
  double max_scaled_minor = 0.0;

  bool ok() const noexcept { return value.has_value(); }
};

/// Splits `party` off as a tensor factor when unfold(t, {party}) is rank one.
PartyFactorResult factor_out_party(const AmplitudeTensor& t, std::size_t party,
                                   double tol = default_tol);

/// Finest partition of the parties across which the state factorises.
///   t == scale * exp(i * global_phase) * (factors[0] (x) factors[1] (x) ...)
/// with the parties of each block in ascending order and the product taken
/// back to the original party order (see assemble()).
struct EntanglementStructure {
  std::vector<std::vector<std::size_t>> blocks;  // sorted by first party
  std::vector<AmplitudeTensor> factors;          // unit norm, largest entry real >= 0
  double global_phase = 0.0;                     // radians in [0, 2pi)
  double scale = 1.0;                            // norm of the input
};

EntanglementStructure entanglement_structure(const AmplitudeTensor& t,
                                             double tol = default_tol);

// Rebuilds the full tensor from a structure.
AmplitudeTensor assemble(const EntanglementStructure& s);

struct FullFactorization {
  std::vector<AmplitudeTensor> factors;  // one per party
  double global_phase = 0.0;
};

struct FullFactorizationResult {
  std::optional<FullFactorization> value;
  std::vector<std::size_t> irreducible_block;  // first non-singleton block on failure

  bool ok() const noexcept { return value.has_value(); }
};

/// Product-state decomposition d_{i1...in} = a^1_{i1} ... a^n_{in}. Requires a
/// norm within tol of 1.
FullFactorizationResult full_factorization(const AmplitudeTensor& t, double tol = default_tol);

}  // namespace entsep
