#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "entsep/mixtures.hpp"
#include "entsep/separability.hpp"
#include "entsep/tensor.hpp"

namespace entsep {

// Largest density-matrix dimension accepted (10 qubits).
inline constexpr std::size_t max_density_dim = 1024;

/// Hermitian (1e-12), unit-trace (1e-9), positive semidefinite (eigenvalues
/// >= -1e-9) matrix over the product basis given by `local_dims`.
class DensityMatrix {
 public:
  DensityMatrix(std::vector<std::size_t> local_dims, Eigen::MatrixXcd entries);

  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  std::span<const std::size_t> local_dims() const noexcept { return dims_; }
  bool all_qubits() const noexcept;

 private:
  std::vector<std::size_t> dims_;
  Eigen::MatrixXcd entries_;
};

// |psi><psi| / <psi|psi>; the state must have norm within 1e-6 of 1.
DensityMatrix density_from_state(const AmplitudeTensor& t);

// sum_i p_i |psi_i><psi_i| over unit-norm members.
DensityMatrix density_from_ensemble(const Ensemble& e);

// Re tr(rho^2).
double purity(const DensityMatrix& rho);

struct Eigenpair {
  double value = 0.0;
  Eigen::VectorXcd vector;
};

// Descending eigenvalues, clamped at 0 from below.
std::vector<Eigenpair> spectral_decomposition(const DensityMatrix& rho);

/// One amplitude minor (lines a, b along `axis`, positions s < t) carried to
/// rho: rows {a_s, a_t} must relate to rows {b_s, b_t} by the same elementwise
/// ratio. Deviation is ||rho[a_s] (x) rho[b_t] - rho[a_t] (x) rho[b_s]||_F
/// divided by the Frobenius norms of the two row pairs; on a pure state it
/// equals the scaled amplitude minor.
struct RowRatioCondition {
  std::size_t axis = 0;
  std::array<std::size_t, 4> rows{};  // a_s, a_t, b_s, b_t
  double deviation = 0.0;
  bool degenerate = false;  // a row pair is numerically zero
};

enum class RowRatioVerdict { satisfied, violated, degenerate };

std::string_view to_string(RowRatioVerdict v) noexcept;

struct RowRatioReport {
  std::vector<RowRatioCondition> conditions;
  double max_deviation = 0.0;  // over non-degenerate conditions
  RowRatioVerdict verdict = RowRatioVerdict::satisfied;
  double tol = default_tol;
};

// Largest qubit count row_ratio_conditions accepts; work grows as 16^n.
inline constexpr std::size_t max_row_ratio_qubits = 7;

/// Violated when some non-degenerate deviation exceeds tol; degenerate when
/// every condition is degenerate; satisfied otherwise.
RowRatioReport row_ratio_conditions(const DensityMatrix& rho, double tol = default_tol);

}  // namespace entsep
