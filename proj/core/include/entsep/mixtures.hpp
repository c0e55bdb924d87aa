#pragma once

#include <vector>

#include "entsep/separability.hpp"
#include "entsep/tensor.hpp"

namespace entsep {

struct EnsembleMember {
  double probability = 0.0;
  AmplitudeTensor state;
};

/// Probability-weighted collection of same-shape states. The constructor
/// enforces p_i >= 0, sum p_i == 1 (within 1e-9) and identical shapes.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleMember> members);

  const std::vector<EnsembleMember>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }

 private:
  std::vector<EnsembleMember> members_;
};

/// Entrywise sum_i p_i alpha^i. Not renormalised: the minor criterion is
/// scale-free and the norm deficit is part of the answer.
AmplitudeTensor combine_pseudo_pure(const Ensemble& e);

/// is_separable_minors applied to the combined tensor. Throws
/// PreconditionError when the members cancel to a (near-)zero tensor.
SeparabilityVerdict mixed_separability(const Ensemble& e, double tol = default_tol);

}  // namespace entsep
