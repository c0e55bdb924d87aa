#include "entsep/locc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/QR>

#include "entsep/error.hpp"
#include "entsep/measures.hpp"

namespace entsep {

namespace {

std::vector<double> sorted_axis_minors(const AmplitudeTensor& t, std::size_t axis, double tol) {
  const double zero = zero_line_norm(t, tol);
  std::vector<double> out;
  out.reserve(axis_minor_count(t, axis));
  visit_axis_minors(t, axis, [&](const MinorView& m) { out.push_back(scaled_minor(m, zero)); });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

void validate_unitary(const LocalUnitary& u) {
  const Eigen::Index k = u.entries.rows();
  if (k == 0 || u.entries.cols() != k) throw ValidationError("local unitary must be square");
  if (!u.entries.allFinite()) throw ValidationError("local unitary has non-finite entries");
  const Eigen::MatrixXcd gram = u.entries.adjoint() * u.entries;
  const double err = (gram - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff();
  if (err > 1e-10)
    throw ValidationError("matrix is not unitary (|U^dagger U - I| = " + std::to_string(err) + ")");
}

AmplitudeTensor apply_local_unitary(const AmplitudeTensor& t, const LocalUnitary& u) {
  if (u.party >= t.n_parties())
    throw BoundsError("unitary acts on party " + std::to_string(u.party) + " of " +
                      std::to_string(t.n_parties()));
  if (static_cast<std::size_t>(u.entries.rows()) != t.dim(u.party))
    throw ValidationError("unitary dimension " + std::to_string(u.entries.rows()) +
                          " does not match local dimension " + std::to_string(t.dim(u.party)));
  validate_unitary(u);

  const std::size_t axis = u.party;
  const std::size_t k = t.dim(axis);
  const std::size_t step = t.stride(axis);
  std::vector<Complex> data(t.size());
  for (std::size_t l = 0; l < line_count(t, axis); ++l) {
    const std::size_t base = line_base(t, axis, l);
    for (std::size_t r = 0; r < k; ++r) {
      Complex acc = 0.0;
      for (std::size_t c = 0; c < k; ++c)
        acc += u.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) *
               t[base + c * step];
      data[base + r * step] = acc;
    }
  }
  const auto dims = t.local_dims();
  return AmplitudeTensor({dims.begin(), dims.end()}, std::move(data));
}

Eigen::MatrixXcd random_unitary(std::size_t k, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  const auto n = static_cast<Eigen::Index>(k);
  Eigen::MatrixXcd z(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) z(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mod = std::abs(r(j, j));
    if (mod > 0.0) q.col(j) *= r(j, j) / mod;
  }
  return q;
}

LoccInvarianceReport check_locc_invariance(const AmplitudeTensor& t,
                                           const std::vector<LocalUnitary>& us, double tol) {
  LoccInvarianceReport report;
  AmplitudeTensor current = t;
  report.verdict_before = is_separable_minors(current, tol).verdict;
  Verdict verdict = report.verdict_before;
  std::size_t count = nonsingular_count(current, tol).total;

  for (const LocalUnitary& u : us) {
    LoccStep step;
    step.party = u.party;
    step.verdict_before = verdict;
    step.nonsingular_before = count;
    step.axis_minors_before = sorted_axis_minors(current, u.party, tol);

    AmplitudeTensor next = apply_local_unitary(current, u);
    step.norm_change = std::abs(next.norm() - current.norm());
    step.verdict_after = is_separable_minors(next, tol).verdict;
    step.nonsingular_after = nonsingular_count(next, tol).total;
    step.axis_minors_after = sorted_axis_minors(next, u.party, tol);
    for (std::size_t i = 0; i < step.axis_minors_before.size(); ++i)
      step.axis_multiset_deviation =
          std::max(step.axis_multiset_deviation,
                   std::abs(step.axis_minors_before[i] - step.axis_minors_after[i]));

    if (step.verdict_after != step.verdict_before) ++report.verdict_changes;
    report.max_axis_multiset_deviation =
        std::max(report.max_axis_multiset_deviation, step.axis_multiset_deviation);
    report.max_norm_change = std::max(report.max_norm_change, step.norm_change);

    verdict = step.verdict_after;
    count = step.nonsingular_after;
    current = std::move(next);
    report.steps.push_back(std::move(step));
  }
  report.verdict_after = verdict;
  return report;
}

}  // namespace entsep
