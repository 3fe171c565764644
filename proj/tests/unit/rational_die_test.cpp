#include <gtest/gtest.h>

#include <algorithm>

#include "antidice/die.hpp"
#include "antidice/errors.hpp"
#include "antidice/lattice.hpp"
#include "antidice/roll_range.hpp"
#include "oracles.hpp"

namespace antidice {
namespace {

using testing::david;
using testing::goliath;

std::vector<Rational> ints(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

TEST(Rational, CanonicalAndParsed) {
  EXPECT_EQ(ratio(2, 4), ratio(1, 2));
  EXPECT_EQ(ratio(1, -2), ratio(-1, 2));
  EXPECT_EQ(parse_rational(" -6/4 "), ratio(-3, 2));
  EXPECT_EQ(parse_rational("+7"), Rational(7));
  EXPECT_EQ(to_string(ratio(-3, 6)), "-1/2");
  EXPECT_THROW(parse_rational("1/0"), DomainError);
  EXPECT_THROW(parse_rational("1/"), DomainError);
  EXPECT_THROW(parse_rational("x"), DomainError);
  EXPECT_THROW(parse_rational(""), DomainError);
}

TEST(Rational, TruncatedDecimal) {
  EXPECT_EQ(truncated_decimal(ratio(61, 6), 6), "10.166666");
  EXPECT_EQ(truncated_decimal(ratio(-1, 2), 6), "-0.500000");
  EXPECT_EQ(truncated_decimal(ratio(-1, 3), 2), "-0.33");
  EXPECT_EQ(truncated_decimal(ratio(-1, 1000), 2), "-0.00");
  EXPECT_EQ(truncated_decimal(Rational(5), 0), "5");
}

TEST(ParseDie, Examples) {
  EXPECT_EQ(parse_die("1,1,4,4,5,6"), Die(ints({1, 1, 4, 4, 5, 6})));
  EXPECT_EQ(parse_die("1,1,4,4,5,6").sides(), 6u);
  EXPECT_EQ(parse_die("0"), Die(ints({0})));
  EXPECT_EQ(parse_die("1/2,-1/2"), Die({ratio(1, 2), ratio(-1, 2)}));
  EXPECT_EQ(parse_die(" 1 , 2 "), Die(ints({1, 2})));
}

TEST(ParseDie, Errors) {
  EXPECT_THROW(parse_die(""), DomainError);
  EXPECT_THROW(parse_die("1,,2"), DomainError);
  EXPECT_THROW(parse_die("1,a"), DomainError);
  EXPECT_THROW(parse_die("1/0"), DomainError);
  EXPECT_THROW(Die(std::vector<Rational>{}), DomainError);
}

TEST(Die, MultisetEquality) {
  EXPECT_EQ(parse_die("6,5,4,4,1,1"), david());
  EXPECT_NE(parse_die("1,4,4,5,6"), david());
  EXPECT_NE(parse_die("1,1,1,4,5,6"), david());
}

TEST(DifferenceDie, GoliathMinusDavidMatrix) {
  // Rows are Goliath's faces, columns David's.
  const Die matrix(ints({-1, -1, -4, -4, -5, -6,  //
                         0,  0,  -3, -3, -4, -5,  //
                         1,  1,  -2, -2, -3, -4,  //
                         5,  5,  2,  2,  1,  0,   //
                         5,  5,  2,  2,  1,  0,   //
                         5,  5,  2,  2,  1,  0}));
  EXPECT_EQ(difference_die(goliath(), david()), matrix);
  EXPECT_EQ(difference_die(goliath(), david()).sides(), 36u);
}

TEST(DifferenceDie, SmallCases) {
  EXPECT_EQ(difference_die(parse_die("0"), parse_die("0")), parse_die("0"));
  EXPECT_EQ(difference_die(parse_die("1,2"), parse_die("0,1")), Die(ints({1, 0, 2, 1})));
}

TEST(DieTransforms, Examples) {
  EXPECT_EQ(negate(parse_die("0,1,2,6,6,6")), Die(ints({0, -1, -2, -6, -6, -6})));
  EXPECT_EQ(shift(parse_die("1,2"), ratio(-3, 2)), Die({ratio(-1, 2), ratio(1, 2)}));
  EXPECT_EQ(scale(parse_die("1,-1"), Rational(2)), Die(ints({2, -2})));
  EXPECT_THROW(scale(parse_die("1,-1"), Rational(0)), DomainError);
}

TEST(Moments, GoliathMinusDavid) {
  const Die d = difference_die(goliath(), david());
  EXPECT_EQ(mean(d), 0);
  EXPECT_EQ(raw_moment(d, 1), 0);
  EXPECT_EQ(raw_moment(d, 2), ratio(61, 6));
  EXPECT_EQ(raw_moment(d, 3), ratio(-1, 2));
  EXPECT_EQ(raw_moment(d, 4), ratio(7698, 36));
  EXPECT_EQ(truncated_decimal(raw_moment(d, 2), 6), "10.166666");
  EXPECT_EQ(truncated_decimal(raw_moment(d, 4), 6), "213.833333");
  EXPECT_THROW(raw_moment(d, 0), DomainError);
}

TEST(ToLattice, Examples) {
  const LatticeDie a = to_lattice(david());
  EXPECT_EQ(a.scale, 1);
  EXPECT_EQ(a.dist.offset(), 1);
  EXPECT_EQ(a.dist.total(), 6);
  const std::vector<BigInt> expected{2, 0, 0, 2, 1, 1};
  EXPECT_TRUE(std::equal(a.dist.weights().begin(), a.dist.weights().end(), expected.begin(), expected.end()));

  const LatticeDie b = to_lattice(parse_die("1/2,-1/2"));
  EXPECT_EQ(b.scale, 2);
  EXPECT_EQ(b.dist.offset(), -1);
  const std::vector<BigInt> eb{1, 0, 1};
  EXPECT_TRUE(std::equal(b.dist.weights().begin(), b.dist.weights().end(), eb.begin(), eb.end()));

  const LatticeDie c = to_lattice(parse_die("0"));
  EXPECT_EQ(c.scale, 1);
  EXPECT_EQ(c.dist.offset(), 0);
  EXPECT_EQ(c.dist.size(), 1u);
  EXPECT_EQ(c.dist.total(), 1);
}

TEST(ToLattice, MixedDenominators) {
  const LatticeDie l = to_lattice(parse_die("1/2,1/3,-5/6"));
  EXPECT_EQ(l.scale, 6);
  EXPECT_EQ(from_lattice(l), parse_die("1/2,1/3,-5/6"));
}

TEST(LatticeDistribution, TrimsAndValidates) {
  const LatticeDistribution d(-2, {0, 0, 3, 0, 1, 0});
  EXPECT_EQ(d.offset(), 0);
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(d.total(), 4);
  EXPECT_EQ(d.probability(2), ratio(1, 4));
  EXPECT_EQ(d.weight_at(100), 0);
  EXPECT_THROW(LatticeDistribution(0, {0, 0}), DomainError);
  EXPECT_THROW(LatticeDistribution(0, {1, -1}), DomainError);
  EXPECT_EQ(LatticeDistribution::delta(3).total(), 1);
}

TEST(LatticeDistribution, Moments) {
  const LatticeDistribution d = to_lattice(difference_die(goliath(), david())).dist;
  EXPECT_EQ(d.mean(), 0);
  EXPECT_EQ(d.raw_moment(2), ratio(61, 6));
  EXPECT_EQ(d.central_moment(3), ratio(-1, 2));
  EXPECT_EQ(d.support_size(), 10u);
  EXPECT_EQ(d.negated().raw_moment(3), ratio(1, 2));
  EXPECT_EQ(d.shifted(2).mean(), 2);
}

TEST(RollRange, Parse) {
  EXPECT_EQ(parse_roll_range("1..6"), (RollRange{1, 6}));
  EXPECT_EQ(parse_roll_range("4"), (RollRange{4, 4}));
  EXPECT_EQ(parse_roll_range(" 2 .. 3 "), (RollRange{2, 3}));
  EXPECT_EQ(parse_roll_range("1..6").count(), 6u);
  EXPECT_EQ(to_string(RollRange{1, 6}), "1..6");
  EXPECT_THROW(parse_roll_range("0"), DomainError);
  EXPECT_THROW(parse_roll_range("5..2"), DomainError);
  EXPECT_THROW(parse_roll_range("1..x"), DomainError);
  EXPECT_THROW(parse_roll_range(""), DomainError);
}

}  // namespace
}  // namespace antidice
