#include "entsep/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "detail/rank_one.hpp"
#include "entsep/error.hpp"

namespace entsep {

namespace {

Eigen::VectorXcd unit_vector(const AmplitudeTensor& t) {
  const double len = t.norm();
  if (std::abs(len - 1.0) > 1e-6)
    throw PreconditionError("density matrix needs a unit-norm state (norm " + std::to_string(len) +
                            ")");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i) v(static_cast<Eigen::Index>(i)) = t[i] / len;
  return v;
}

std::vector<std::size_t> dims_vector(std::span<const std::size_t> dims) {
  return {dims.begin(), dims.end()};
}

void check_dim(std::size_t dim) {
  if (dim > max_density_dim)
    throw ResourceError("density matrices are limited to dimension " +
                        std::to_string(max_density_dim));
}

}  // namespace

DensityMatrix::DensityMatrix(std::vector<std::size_t> local_dims, Eigen::MatrixXcd entries)
    : dims_(std::move(local_dims)), entries_(std::move(entries)) {
  std::size_t dim = 1;
  for (std::size_t d : dims_) {
    if (d < 2) throw ValidationError("local dimension below 2");
    dim *= d;
    check_dim(dim);
  }
  if (dims_.empty()) throw ValidationError("density matrix needs at least one party");
  if (entries_.rows() != entries_.cols() || static_cast<std::size_t>(entries_.rows()) != dim)
    throw ValidationError("density matrix must be " + std::to_string(dim) + "x" +
                          std::to_string(dim) + " for the given local_dims");
  if (!entries_.allFinite()) throw ValidationError("density matrix has non-finite entries");

  const double skew = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (skew > 1e-12) throw ValidationError("density matrix is not Hermitian");
  const double trace = entries_.trace().real();
  if (std::abs(trace - 1.0) > 1e-9)
    throw ValidationError("density matrix trace is " + std::to_string(trace) + ", expected 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(entries_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-9)
    throw ValidationError("density matrix has a negative eigenvalue");
}

bool DensityMatrix::all_qubits() const noexcept {
  return std::all_of(dims_.begin(), dims_.end(), [](std::size_t d) { return d == 2; });
}

DensityMatrix density_from_state(const AmplitudeTensor& t) {
  check_dim(t.size());
  const Eigen::VectorXcd v = unit_vector(t);
  return DensityMatrix(dims_vector(t.local_dims()), v * v.adjoint());
}

DensityMatrix density_from_ensemble(const Ensemble& e) {
  const AmplitudeTensor& first = e.members().front().state;
  check_dim(first.size());
  const auto n = static_cast<Eigen::Index>(first.size());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& m : e.members()) {
    const Eigen::VectorXcd v = unit_vector(m.state);
    rho += m.probability * (v * v.adjoint());
  }
  return DensityMatrix(dims_vector(first.local_dims()), std::move(rho));
}

double purity(const DensityMatrix& rho) {
  // tr(rho^2) = sum_ij rho_ij rho_ji = sum_ij |rho_ij|^2 for Hermitian rho.
  return (rho.entries() * rho.entries()).trace().real();
}

std::vector<Eigenpair> spectral_decomposition(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho.entries());
  const Eigen::Index n = eig.eigenvalues().size();
  std::vector<Eigenpair> out;
  out.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = n; i-- > 0;)
    out.push_back({std::max(eig.eigenvalues()(i), 0.0), eig.eigenvectors().col(i)});
  return out;
}

std::string_view to_string(RowRatioVerdict v) noexcept {
  switch (v) {
    case RowRatioVerdict::satisfied: return "satisfied";
    case RowRatioVerdict::violated: return "violated";
    case RowRatioVerdict::degenerate: return "degenerate";
  }
  return "unknown";
}

RowRatioReport row_ratio_conditions(const DensityMatrix& rho, double tol) {
  if (!rho.all_qubits())
    throw PreconditionError("row-ratio conditions are only defined for qubit parties");
  if (rho.local_dims().size() > max_row_ratio_qubits)
    throw ResourceError("row-ratio conditions support at most " +
                        std::to_string(max_row_ratio_qubits) + " qubits");

  const Eigen::MatrixXcd& m = rho.entries();
  const auto dim = static_cast<Eigen::Index>(rho.dim());
  const double zero = tol * std::abs(m.trace().real());
  // Shape-only tensor for line bookkeeping.
  const AmplitudeTensor shape(dims_vector(rho.local_dims()), std::vector<Complex>(rho.dim()));

  RowRatioReport report;
  report.tol = tol;
  bool any_violated = false;
  bool all_degenerate = true;

  for (std::size_t axis = 0; axis < shape.n_parties(); ++axis) {
    const std::size_t n_lines = line_count(shape, axis);
    const std::size_t step = shape.stride(axis);
    for (std::size_t a = 0; a < n_lines; ++a) {
      for (std::size_t b = a + 1; b < n_lines; ++b) {
        const std::size_t base_a = line_base(shape, axis, a);
        const std::size_t base_b = line_base(shape, axis, b);
        RowRatioCondition c;
        c.axis = axis;
        c.rows = {base_a, base_a + step, base_b, base_b + step};
        const auto as = static_cast<Eigen::Index>(c.rows[0]);
        const auto at = static_cast<Eigen::Index>(c.rows[1]);
        const auto bs = static_cast<Eigen::Index>(c.rows[2]);
        const auto bt = static_cast<Eigen::Index>(c.rows[3]);

        const double norm_a = std::sqrt(m.row(as).squaredNorm() + m.row(at).squaredNorm());
        const double norm_b = std::sqrt(m.row(bs).squaredNorm() + m.row(bt).squaredNorm());
        c.degenerate = norm_a <= zero || norm_b <= zero;
        if (!c.degenerate) {
          double sq = 0.0;
          for (Eigen::Index i = 0; i < dim; ++i)
            for (Eigen::Index j = 0; j < dim; ++j)
              sq += std::norm(m(as, i) * m(bt, j) - m(at, i) * m(bs, j));
          c.deviation = std::sqrt(sq) / (norm_a * norm_b + detail::norm_floor);
          report.max_deviation = std::max(report.max_deviation, c.deviation);
          any_violated = any_violated || c.deviation > tol;
          all_degenerate = false;
        }
        report.conditions.push_back(c);
      }
    }
  }

  if (any_violated)
    report.verdict = RowRatioVerdict::violated;
  else if (all_degenerate && !report.conditions.empty())
    report.verdict = RowRatioVerdict::degenerate;
  else
    report.verdict = RowRatioVerdict::satisfied;
  return report;
}

}  // namespace entsep
