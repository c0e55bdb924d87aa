#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "entsep/error.hpp"
#include "entsep/mixtures.hpp"
#include "random_states.hpp"

using namespace entsep;
using sample::from_real;

namespace {

AmplitudeTensor ket(std::size_t index) {
  std::vector<double> v(4, 0.0);
  v[index] = 1.0;
  return from_real({2, 2}, v);
}

}  // namespace

TEST(Mixtures, CombineExamples) {
  sample::Rng rng(3);
  const auto t = sample::random_non_product(2, rng);

  const auto single = combine_pseudo_pure(Ensemble({{1.0, t}}));
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(single[i], t[i]);

  const auto twice = combine_pseudo_pure(Ensemble({{0.5, t}, {0.5, t}}));
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(std::abs(twice[i] - t[i]), 0.0, 1e-15);

  const auto mix = combine_pseudo_pure(Ensemble({{0.5, ket(0)}, {0.5, ket(3)}}));
  EXPECT_EQ(mix[0], Complex(0.5));
  EXPECT_EQ(mix[1], Complex(0.0));
  EXPECT_EQ(mix[2], Complex(0.0));
  EXPECT_EQ(mix[3], Complex(0.5));
  EXPECT_NEAR(mix.norm(), std::sqrt(0.5), 1e-15);
}

TEST(Mixtures, Verdicts) {
  sample::Rng rng(4);
  const auto p = sample::random_product(2, rng);
  EXPECT_EQ(mixed_separability(Ensemble({{0.3, p}, {0.7, p}})).verdict, Verdict::separable);

  const auto bell_like = mixed_separability(Ensemble({{0.5, ket(0)}, {0.5, ket(3)}}));
  EXPECT_EQ(bell_like.verdict, Verdict::entangled);
  ASSERT_TRUE(bell_like.witness.has_value());
  EXPECT_NEAR(std::abs(bell_like.witness->det), 0.25, 1e-15);

  const double r = 1 / std::numbers::sqrt2;
  const auto top = from_real({2, 2}, {r, r, 0, 0});
  const auto bottom = from_real({2, 2}, {0, 0, r, r});
  EXPECT_EQ(mixed_separability(Ensemble({{0.5, top}, {0.5, bottom}})).verdict, Verdict::separable);

  const auto t = sample::random_non_product(3, rng);
  EXPECT_EQ(mixed_separability(Ensemble({{1.0, t}})).max_scaled_minor,
            is_separable_minors(t).max_scaled_minor);
}

TEST(Mixtures, LinearityAndNormBound) {
  sample::Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<EnsembleMember> members;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> w(3);
    double total = 0.0;
    for (auto& x : w) total += (x = u(rng));
    for (std::size_t i = 0; i < 3; ++i)
      members.push_back({w[i] / total, sample::random_non_product(2, rng)});
    // Renormalise so probabilities sum to one within the validator's tolerance.
    double s = 0.0;
    for (const auto& m : members) s += m.probability;
    members.back().probability += 1.0 - s;
    const Ensemble e(members);
    const auto combined = combine_pseudo_pure(e);
    for (std::size_t i = 0; i < combined.size(); ++i) {
      Complex direct = 0.0;
      for (const auto& m : e.members()) direct += m.probability * m.state[i];
      EXPECT_EQ(combined[i], direct);
    }
    EXPECT_LE(combined.norm(), 1.0 + 1e-12);
  }
}

TEST(Mixtures, Validation) {
  EXPECT_THROW(Ensemble({}), ValidationError);
  EXPECT_THROW(Ensemble({{0.5, ket(0)}, {0.4, ket(3)}}), ValidationError);
  EXPECT_THROW(Ensemble({{-0.5, ket(0)}, {1.5, ket(3)}}), ValidationError);
  EXPECT_THROW(Ensemble({{std::nan(""), ket(0)}}), ValidationError);
  EXPECT_THROW(Ensemble({{0.5, ket(0)}, {0.5, sample::ghz3()}}), ValidationError);
  EXPECT_NO_THROW(Ensemble({{0.5 + 1e-10, ket(0)}, {0.5, ket(3)}}));
}

TEST(Mixtures, CancellationIsAnError) {
  const auto t = ket(1);
  const Ensemble e({{0.5, t}, {0.5, t.scaled(-1.0)}});
  EXPECT_THROW(mixed_separability(e), PreconditionError);
}
