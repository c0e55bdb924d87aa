#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "entsep/error.hpp"
#include "entsep/locc.hpp"
#include "entsep/measures.hpp"
#include "oracles.hpp"
#include "random_states.hpp"

using namespace entsep;
using sample::from_real;

namespace {

Eigen::MatrixXcd pauli_x() {
  Eigen::MatrixXcd m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Eigen::MatrixXcd hadamard() {
  Eigen::MatrixXcd m(2, 2);
  const double r = 1 / std::numbers::sqrt2;
  m << r, r, r, -r;
  return m;
}

}  // namespace

TEST(Locc, ApplyExamples) {
  const auto ket00 = from_real({2, 2}, {1, 0, 0, 0});
  const auto flipped = apply_local_unitary(ket00, {0, pauli_x()});
  EXPECT_EQ(flipped[2], Complex(1.0));
  EXPECT_EQ(flipped[0], Complex(0.0));

  sample::Rng rng(1);
  const AmplitudeTensor t({2, 3}, sample::haar_vector(6, rng));
  const auto same = apply_local_unitary(t, {1, Eigen::MatrixXcd::Identity(3, 3)});
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(same[i], t[i]);

  const auto h = apply_local_unitary(sample::bell(), {0, hadamard()});
  const double expected[] = {0.5, 0.5, 0.5, -0.5};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(h[i] - expected[i]), 0.0, 1e-15);
}

TEST(Locc, ApplyValidation) {
  EXPECT_THROW(apply_local_unitary(sample::bell(), {2, pauli_x()}), BoundsError);
  EXPECT_THROW(apply_local_unitary(sample::bell(), {0, Eigen::MatrixXcd::Identity(3, 3)}),
               ValidationError);
  Eigen::MatrixXcd bad = pauli_x();
  bad(0, 0) = 0.1;
  EXPECT_THROW(apply_local_unitary(sample::bell(), {0, bad}), ValidationError);
}

TEST(Locc, RandomUnitaryIsUnitaryAndSeeded) {
  sample::Rng a(5), b(5);
  for (std::size_t k : {2, 3, 5}) {
    const auto u = random_unitary(k, a);
    const auto v = random_unitary(k, b);
    EXPECT_TRUE(u == v);
    const auto err = (u.adjoint() * u - Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(k),
                                                                    static_cast<Eigen::Index>(k)))
                         .cwiseAbs()
                         .maxCoeff();
    EXPECT_LE(err, 1e-12);
  }
}

TEST(Locc, InvarianceExamples) {
  const auto bell = check_locc_invariance(sample::bell(), {{0, hadamard()}});
  EXPECT_EQ(bell.verdict_before, Verdict::entangled);
  EXPECT_EQ(bell.verdict_after, Verdict::entangled);
  EXPECT_FALSE(bell.violated());
  ASSERT_EQ(bell.steps.size(), 1u);
  EXPECT_NEAR(bell.steps[0].axis_minors_before[0], 1.0, 1e-12);
  EXPECT_NEAR(bell.steps[0].axis_minors_after[0], 1.0, 1e-12);

  sample::Rng rng(2);
  const auto product = sample::random_product(3, rng);
  std::vector<LocalUnitary> us;
  for (std::size_t p : {2, 0, 1, 0}) us.push_back({p, random_unitary(2, rng)});
  const auto pr = check_locc_invariance(product, us);
  EXPECT_EQ(pr.verdict_before, Verdict::separable);
  EXPECT_EQ(pr.verdict_after, Verdict::separable);
  EXPECT_EQ(pr.verdict_changes, 0u);

  const auto ghz = check_locc_invariance(sample::ghz3(), {{2, pauli_x()}});
  EXPECT_EQ(ghz.verdict_after, Verdict::entangled);
  EXPECT_EQ(ghz.steps[0].nonsingular_before, 3u);
  EXPECT_EQ(ghz.steps[0].nonsingular_after, 3u);
}

TEST(Locc, RandomTrialsPreserveVerdictNormAndAxisMinors) {
  sample::Rng rng(10);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
    const auto t = trial % 2 ? sample::random_product(n, rng) : sample::random_non_product(n, rng);
    std::vector<LocalUnitary> us;
    for (std::size_t p = 0; p < n; ++p) us.push_back({(p * 7 + static_cast<std::size_t>(trial)) % n, random_unitary(2, rng)});
    const auto r = check_locc_invariance(t, us);
    EXPECT_FALSE(r.violated());
    EXPECT_LE(r.max_norm_change, 1e-12);
    EXPECT_LE(r.max_axis_multiset_deviation, 1e-10);

    // Independent check of the first step's multisets.
    const auto after = apply_local_unitary(t, us[0]);
    const auto before_oracle = oracle::axis_scaled_minors(sample::dims_of(t), sample::to_vector(t), us[0].party);
    const auto after_oracle = oracle::axis_scaled_minors(sample::dims_of(after), sample::to_vector(after), us[0].party);
    ASSERT_EQ(before_oracle.size(), after_oracle.size());
    for (std::size_t i = 0; i < before_oracle.size(); ++i)
      EXPECT_NEAR(before_oracle[i], after_oracle[i], 1e-10);
  }
}
