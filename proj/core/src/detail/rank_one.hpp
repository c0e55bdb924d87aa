#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Core>

namespace entsep::detail {

inline constexpr double norm_floor = 1e-300;

// Columns of the matrix play the role of lines: a matrix is "rank one" when
// every 2x2 minor, divided by the norms of its two columns, is at most tol.
// Columns with norm <= tol * ||M||_F count as zero and are proportional to
// everything.
struct RankOneCheck {
  bool rank_one = false;
  // Exact maximum when computed; otherwise an upper bound that is <= tol.
  double max_scaled_minor = 0.0;
};

// With `exact_max` false, enumeration stops at the first violating minor and
// max_scaled_minor is only meaningful as "> tol".
RankOneCheck check_rank_one(const Eigen::MatrixXcd& m, double tol, bool exact_max);

// m ~= left * right^T with `left` unit norm and its largest-modulus entry real
// non-negative. `right` absorbs scale and phase: right = left^H m.
struct RankOneFactor {
  Eigen::VectorXcd left;
  Eigen::VectorXcd right;
};

RankOneFactor dominant_rank_one(const Eigen::MatrixXcd& m);

// Index of the largest-modulus entry; ties (relative 1e-12) go to the lowest
// index.
std::size_t anchor_index(std::span<const std::complex<double>> v);

// Unit complex number with the phase of v[anchor_index(v)], 1 for a zero v.
std::complex<double> anchor_phase(std::span<const std::complex<double>> v);

}  // namespace entsep::detail
