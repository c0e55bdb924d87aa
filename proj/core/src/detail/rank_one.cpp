#include "detail/rank_one.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace entsep::detail {

std::size_t anchor_index(std::span<const std::complex<double>> v) {
  double best = -1.0;
  for (const auto& c : v) best = std::max(best, std::abs(c));
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) >= best * (1.0 - 1e-12)) return i;
  return 0;
}

std::complex<double> anchor_phase(std::span<const std::complex<double>> v) {
  if (v.empty()) return 1.0;
  const auto a = v[anchor_index(v)];
  const double mod = std::abs(a);
  return mod > 0.0 ? a / mod : std::complex<double>(1.0);
}

RankOneFactor dominant_rank_one(const Eigen::MatrixXcd& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Eigen::VectorXcd u;
  if (rows <= cols) {
    const Eigen::MatrixXcd gram = m * m.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
    u = eig.eigenvectors().col(rows - 1);
  } else {
    const Eigen::MatrixXcd gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
    u = m * eig.eigenvectors().col(cols - 1);
  }
  const double len = u.norm();
  if (!(len > 0.0)) {
    u = Eigen::VectorXcd::Zero(rows);
    u(0) = 1.0;
  } else {
    u /= len;
  }
  u *= std::conj(anchor_phase({u.data(), static_cast<std::size_t>(u.size())}));

  RankOneFactor out;
  out.right = m.transpose() * u.conjugate();
  out.left = std::move(u);
  return out;
}

RankOneCheck check_rank_one(const Eigen::MatrixXcd& m, double tol, bool exact_max) {
  const double zero = tol * m.norm();
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();

  Eigen::VectorXd col_norms(cols);
  for (Eigen::Index c = 0; c < cols; ++c) col_norms(c) = m.col(c).norm();

  // Fast path: if every column is within angle asin(tol/2) of the dominant
  // direction, every pair is within asin(tol) and all minors pass.
  const Eigen::VectorXcd u = dominant_rank_one(m).left;
  double bound = 0.0;
  bool pass = true;
  for (Eigen::Index c = 0; c < cols && pass; ++c) {
    if (col_norms(c) <= zero) continue;
    const Eigen::VectorXcd off = m.col(c) - u * u.dot(m.col(c));
    const double s = 2.0 * off.norm() / col_norms(c);
    bound = std::max(bound, s);
    if (s > tol) pass = false;
  }
  if (pass) return {true, std::min(bound, 1.0)};

  double best = 0.0;
  for (Eigen::Index a = 0; a < cols; ++a) {
    if (col_norms(a) <= zero) continue;
    for (Eigen::Index b = a + 1; b < cols; ++b) {
      if (col_norms(b) <= zero) continue;
      const double scale = col_norms(a) * col_norms(b) + norm_floor;
      for (Eigen::Index s = 0; s < rows; ++s) {
        for (Eigen::Index t = s + 1; t < rows; ++t) {
          const double v = std::abs(m(s, a) * m(t, b) - m(t, a) * m(s, b)) / scale;
          if (v > best) {
            best = v;
            if (!exact_max && best > tol) return {false, best};
          }
        }
      }
    }
  }
  return {best <= tol, best};
}

}  // namespace entsep::detail
