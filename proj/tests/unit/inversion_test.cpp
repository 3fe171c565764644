#include <gtest/gtest.h>

#include "antidice/convolution.hpp"
#include "antidice/errors.hpp"
#include "antidice/inversion.hpp"
#include "oracles.hpp"

namespace antidice {
namespace {

using testing::as_map;
using testing::brute_conditional;

TEST(FamilyDie, Examples) {
  for (const Rational& x : {Rational(10), ratio(1, 2), ratio(-7, 3), Rational(1000)}) {
    EXPECT_EQ(mean(family_die(x)), 0);
  }
  EXPECT_EQ(family_die(Rational(10)), parse_die("10,5,3,-9,-9"));
  EXPECT_EQ(family_die(ratio(1, 2)), parse_die("1/2,5,3,-9,1/2"));
}

TEST(ConditionalPair, SmallCases) {
  EXPECT_EQ(as_map(conditional_pair_distribution(1)),
            (std::map<std::int64_t, BigInt>{{-9, 1}, {3, 1}, {5, 1}}));
  const LatticeDistribution two = conditional_pair_distribution(2);
  EXPECT_EQ(two.total(), 11);
  EXPECT_EQ(two.weight_at(1), 2);
  EXPECT_THROW(conditional_pair_distribution(0), DomainError);
}

TEST(ConditionalPair, MatchesEnumerationUpToSeven) {
  for (unsigned k = 1; k <= 7; ++k) EXPECT_EQ(as_map(conditional_pair_distribution(k)), brute_conditional(k)) << k;
}

TEST(ConditionalPair, MatchedSubsetOfFullPower) {
  // With x > 9k the matched sequences are exactly those whose sum lies in
  // [-9k, 5k + k/2]; every other sum is at least x - 9k away.
  for (unsigned k = 1; k <= 6; ++k) {
    const LatticeDistribution full = power(to_lattice(family_die(Rational(100))).dist, k);
    BigInt five_k;
    mpz_ui_pow_ui(five_k.get_mpz_t(), 5, k);
    EXPECT_EQ(full.total(), five_k);
    const LatticeDistribution cond = conditional_pair_distribution(k);
    for (std::int64_t v = cond.min_value(); v <= cond.max_value(); ++v) {
      EXPECT_EQ(full.weight_at(v), cond.weight_at(v)) << "k=" << k << " v=" << v;
    }
  }
}

TEST(ConditionalPair, MeanIsNotLinear) {
  std::vector<Rational> means;
  for (unsigned k = 1; k <= 6; ++k) means.push_back(conditional_pair_distribution(k).mean());
  bool linear = true;
  for (std::size_t i = 2; i < means.size(); ++i) linear = linear && (means[i] - means[i - 1] == means[1] - means[0]);
  EXPECT_FALSE(linear);
  EXPECT_NE(means[1] - means[0], means[0]);
}

TEST(TiltInvariance, ConstantForLargeX) {
  const TiltInvariance t = tilt_invariance_check(Rational(28), Rational(100), 3);
  EXPECT_TRUE(t.holds);
  EXPECT_EQ(t.first, t.second);
  EXPECT_EQ(t.first.total(), 125);
  EXPECT_EQ(t.first.above - t.first.below, t.conditional_margin);
  EXPECT_TRUE(tilt_invariance_check(Rational(50), Rational(50), 5).holds);
  EXPECT_TRUE(tilt_invariance_check(ratio(73, 2), Rational(1001), 4).holds);
}

TEST(TiltInvariance, StrictPrecondition) {
  EXPECT_THROW(tilt_invariance_check(Rational(10), Rational(100), 3), DomainError);
  EXPECT_THROW(tilt_invariance_check(Rational(27), Rational(100), 3), DomainError);
  EXPECT_NO_THROW(tilt_invariance_check(ratio(271, 10), Rational(100), 3));
}

TEST(FirstInversionScan, KmaxOne) {
  const std::vector<Rational> xs{Rational(20)};
  const auto pts = first_inversion_scan(xs, 1);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0].outcome, FamilyOutcome::no_inversion);
  EXPECT_FALSE(pts[0].first_inversion.has_value());
  EXPECT_EQ(pts[0].kmax_searched, 1u);
}

TEST(FirstInversionScan, AgreesWithDominanceSequence) {
  const auto xs = family_grid(Rational(10), Rational(40), Rational(3));
  const auto pts = first_inversion_scan(xs, 60);
  ASSERT_EQ(pts.size(), xs.size());
  for (const FamilyPoint& p : pts) {
    const DominanceSequence seq = dominance_sequence(family_die(p.x), parse_die("0"), 60);
    if (seq.at_roll(1) != Relation::win) {
      EXPECT_EQ(p.outcome, FamilyOutcome::no_winning_start);
      continue;
    }
    const InversionReport r = analyze_inversion(seq, 1);
    if (r.status == InversionStatus::inverted) {
      EXPECT_EQ(p.outcome, FamilyOutcome::inverted);
      EXPECT_EQ(p.first_inversion, r.rolls);
      EXPECT_LE(*p.first_inversion, p.kmax_searched);
    } else if (r.status == InversionStatus::tie_interrupted) {
      EXPECT_EQ(p.outcome, FamilyOutcome::tie_interrupted);
      EXPECT_EQ(p.tie_at, r.rolls);
    } else {
      EXPECT_EQ(p.outcome, FamilyOutcome::no_inversion);
    }
  }
}

TEST(FirstInversionScan, HypothesisFlags) {
  const std::vector<Rational> xs{Rational(10), Rational(30), ratio(61, 2)};
  const auto pts = first_inversion_scan(xs, 5);
  EXPECT_EQ(pts[0].third_moment_sign, -1);
  EXPECT_FALSE(pts[0].hypothesis_holds);
  EXPECT_EQ(pts[1].span, 1);
  EXPECT_EQ(pts[1].third_moment_sign, 1);
  EXPECT_TRUE(pts[1].hypothesis_holds);
  EXPECT_EQ(pts[2].span, ratio(1, 2));
  EXPECT_FALSE(pts[2].hypothesis_holds);
}

TEST(FirstInversionScan, NondecreasingWhereHypothesisHolds) {
  const auto xs = family_grid(Rational(16), Rational(60), Rational(2));
  FamilyScanOptions o;
  o.jobs = 2;
  const auto pts = first_inversion_scan(xs, 100, o);
  std::uint64_t previous = 0;
  for (const FamilyPoint& p : pts) {
    ASSERT_TRUE(p.hypothesis_holds);
    ASSERT_TRUE(p.first_inversion.has_value()) << to_string(p.x);
    EXPECT_GE(*p.first_inversion, previous) << to_string(p.x);
    previous = *p.first_inversion;
  }
}

TEST(FamilyGrid, Inclusive) {
  EXPECT_EQ(family_grid(Rational(10), Rational(14), Rational(2)),
            (std::vector<Rational>{Rational(10), Rational(12), Rational(14)}));
  EXPECT_EQ(family_grid(Rational(10), Rational(15), Rational(2)).size(), 3u);
  EXPECT_THROW(family_grid(Rational(1), Rational(2), Rational(0)), DomainError);
  EXPECT_THROW(family_grid(Rational(3), Rational(2), Rational(1)), DomainError);
}

TEST(QuadraticFit, ExactParabola) {
  std::vector<std::pair<Rational, Rational>> pts;
  for (int x = -3; x <= 5; ++x) pts.emplace_back(Rational(x), Rational(2 * x * x - 3 * x + 7));
  const QuadraticFit f = quadratic_fit(pts);
  EXPECT_EQ(f.c2, 2);
  EXPECT_EQ(f.c1, -3);
  EXPECT_EQ(f.c0, 7);
  EXPECT_EQ(f.residual, 0.0);
}

TEST(QuadraticFit, ThreePointsInterpolate) {
  const std::vector<std::pair<Rational, Rational>> pts{
      {Rational(1), Rational(4)}, {Rational(2), Rational(1)}, {ratio(7, 2), Rational(9)}};
  const QuadraticFit f = quadratic_fit(pts);
  for (const auto& [x, y] : pts) EXPECT_EQ(f.c2 * x * x + f.c1 * x + f.c0, y);
  EXPECT_EQ(f.residual, 0.0);
}

TEST(QuadraticFit, NeedsThreeDistinctX) {
  const std::vector<std::pair<Rational, Rational>> pts{
      {Rational(1), Rational(4)}, {Rational(1), Rational(5)}, {Rational(2), Rational(9)}, {Rational(2), Rational(1)}};
  EXPECT_THROW(quadratic_fit(pts), DomainError);
  EXPECT_THROW(quadratic_fit(std::vector<std::pair<Rational, Rational>>{}), DomainError);
}

TEST(QuadraticFit, NoisyDataHasPositiveResidual) {
  std::vector<std::pair<Rational, Rational>> pts;
  for (int x = 0; x < 6; ++x) pts.emplace_back(Rational(x), Rational(x * x + (x % 2)));
  const QuadraticFit f = quadratic_fit(pts);
  EXPECT_GT(f.residual, 0.0);
  EXPECT_GT(f.c2, 0);
}

}  // namespace
}  // namespace antidice
