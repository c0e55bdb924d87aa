#include "entsep/mixtures.hpp"

#include <cmath>
#include <string>

#include "entsep/error.hpp"

namespace entsep {

namespace {

// Combined norms at or below this fraction of the weighted member norms are
// treated as complete cancellation.
constexpr double cancellation_ratio = 1e-12;

}  // namespace

Ensemble::Ensemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
  if (members_.empty()) throw ValidationError("ensemble has no members");
  double total = 0.0;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const double p = members_[i].probability;
    if (!std::isfinite(p) || p < 0.0)
      throw ValidationError("member " + std::to_string(i) + " has an invalid probability");
    if (!members_[i].state.same_shape(members_.front().state))
      throw ValidationError("member " + std::to_string(i) + " has a different shape from member 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw ValidationError("probabilities sum to " + std::to_string(total) + ", expected 1");
}

AmplitudeTensor combine_pseudo_pure(const Ensemble& e) {
  const AmplitudeTensor& first = e.members().front().state;
  std::vector<Complex> data(first.size());
  for (const auto& m : e.members())
    for (std::size_t i = 0; i < data.size(); ++i) data[i] += m.probability * m.state[i];
  const auto dims = first.local_dims();
  return AmplitudeTensor({dims.begin(), dims.end()}, std::move(data));
}

SeparabilityVerdict mixed_separability(const Ensemble& e, double tol) {
  const AmplitudeTensor combined = combine_pseudo_pure(e);
  double weighted = 0.0;
  for (const auto& m : e.members()) weighted += m.probability * m.state.norm();
  if (!(combined.norm() > cancellation_ratio * weighted))
    throw PreconditionError("ensemble members cancel: combined tensor has norm " +
                            std::to_string(combined.norm()));
  return is_separable_minors(combined, tol);
}

}  // namespace entsep
