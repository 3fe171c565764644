#include <gtest/gtest.h>

#include <mpfr.h>

#include "antidice/convolution.hpp"
#include "antidice/dominance.hpp"
#include "antidice/edgeworth.hpp"
#include "antidice/errors.hpp"
#include "oracles.hpp"

namespace antidice {
namespace {

using testing::david;
using testing::goliath;

const EdgeworthParams& gd() {
  static const EdgeworthParams p = compute_params(to_lattice(difference_die(goliath(), david())).dist);
  return p;
}

TEST(EdgeworthParams, ExactFields) {
  const EdgeworthParams& p = gd();
  EXPECT_EQ(p.shift, 0);
  EXPECT_EQ(p.span, 1);
  EXPECT_EQ(p.m_min, ratio(1, 36));
  EXPECT_EQ(p.c_norm, 2);
  EXPECT_EQ(p.mu1, 0);
  EXPECT_EQ(p.mu2, ratio(61, 6));
  EXPECT_EQ(p.mu3, ratio(-1, 2));
  EXPECT_EQ(p.mu4, ratio(1283, 6));
}

TEST(EdgeworthParams, TruncatedConstants) {
  const EdgeworthParams& p = gd();
  EXPECT_EQ(p.nu3.truncated(6), "-0.015424");
  // nu4 = 7698/3721 exactly.
  EXPECT_EQ(p.nu4.truncated(6), truncated_decimal(ratio(7698, 3721), 6));
  EXPECT_EQ(p.nu4.truncated(6), "2.068798");
  EXPECT_EQ(p.beta.truncated(6), "0.156812");
  EXPECT_EQ(p.q3.truncated(6), "0.156812");
  EXPECT_EQ(p.p0.truncated(6), "1.718281");
  EXPECT_EQ(p.p1.truncated(6), "0.013699");
  EXPECT_EQ(p.q1.truncated(6), "0.286199");
  EXPECT_EQ(p.q2.truncated(6), "0.247233");
  EXPECT_EQ(p.q4.truncated(6), "0.002570");
  EXPECT_EQ(p.q5.truncated(6), "0.000745");
  EXPECT_EQ(p.r.truncated(6), "0.001107");
  EXPECT_EQ(p.n_min.truncated(6), "3.494060");
  EXPECT_EQ(p.validity_floor(), 4u);
}

TEST(EdgeworthParams, IntervalsAreTight) {
  const EdgeworthParams& p = gd();
  for (const Interval* v : {&p.sigma, &p.nu3, &p.q1, &p.q2, &p.q5, &p.r, &p.n_min}) {
    const Interval width = *v - *v;
    EXPECT_LT(std::abs(width.upper_double()), 1e-60);
  }
}

TEST(EdgeworthParams, COverride) {
  EdgeworthOptions options;
  options.c_norm = Rational(1);
  const EdgeworthParams p = compute_params(to_lattice(difference_die(goliath(), david())).dist, options);
  EXPECT_EQ(p.r.truncated(6), "0.004429");
}

TEST(EdgeworthParams, Preconditions) {
  EXPECT_THROW(compute_params(to_lattice(parse_die("0")).dist), DomainError);
  EXPECT_THROW(compute_params(to_lattice(parse_die("1,2")).dist), DomainError);
}

TEST(LeadingTerm, Coefficient) {
  EXPECT_EQ(leading_coefficient(gd()).truncated(6), "0.002051");
  const Interval at100 = leading_term(gd(), 100);
  EXPECT_EQ(at100.truncated(7), "0.0002051");
  EXPECT_TRUE(at100.positive());
}

TEST(LeadingTerm, SymmetricDieVanishes) {
  const EdgeworthParams p = compute_params(to_lattice(parse_die("-2,-1,0,1,2")).dist);
  for (std::uint64_t n : {1u, 10u, 1000u}) EXPECT_EQ(leading_term(p, n).truncated(30), "0." + std::string(30, '0'));
}

TEST(LeadingTerm, SignOppositeToThirdMoment) {
  const EdgeworthParams neg = compute_params(to_lattice(parse_die("1,1,-2")).dist);
  const EdgeworthParams pos = compute_params(to_lattice(parse_die("-1,-1,2")).dist);
  for (std::uint64_t n : {1u, 7u, 99u}) {
    EXPECT_TRUE(leading_term(neg, n).positive());
    EXPECT_TRUE(leading_term(pos, n).negative());
  }
}

TEST(LFunction, SpanOne) {
  const Interval minus_nu3 = -gd().nu3;
  for (std::int64_t c : {-5, 0, 1, 17}) {
    EXPECT_EQ(L_function(gd(), c).truncated(20), minus_nu3.truncated(20));
  }
}

TEST(LFunction, DirectArithmetic) {
  EdgeworthParams p;
  p.span = 3;
  p.sigma = Interval(1);
  p.nu3 = Interval(0);
  EXPECT_EQ(L_function(p, 1).truncated(10), "1.0000000000");
  EXPECT_EQ(L_function(p, 3).truncated(10), "0.0000000000");
  EXPECT_EQ(L_function(p, -1).truncated(10), "-1.0000000000");
}

TEST(ErrorBound, ExpandedCoefficients) {
  const ExpandedBound e = expanded_bound(gd());
  EXPECT_EQ(e.inv_n.truncated(6), "0.494467");
  EXPECT_EQ(e.exp_coefficient.truncated(6), "903.068802");
  EXPECT_EQ(e.exp_rate.truncated(6), "0.000553");
  EXPECT_EQ(e.inv_n_three_half.truncated(6), "0.000594");
  EXPECT_EQ(e.sqrt_rate.truncated(6), "3.738481");
  EXPECT_EQ(e.tail_inv_sqrt.truncated(6), "0.727108");
  EXPECT_EQ(e.tail_inv_n.truncated(6), "1.967088");
  EXPECT_EQ(e.tail_quarter.truncated(6), "0.435193");
  EXPECT_EQ(e.inner_inv_sqrt.truncated(6), "0.042633");
  EXPECT_EQ(e.inner_constant.truncated(6), "0.005141");
}

TEST(ErrorBound, TermsSumToBound) {
  for (std::uint64_t n : {4u, 50u, 12345u}) {
    Interval sum(0);
    const Interval nn(static_cast<long>(n));
    for (const BoundTerm& t : error_bound_terms(gd(), n)) {
      sum += t.coefficient * exp(-(t.exp_linear * nn) - t.exp_sqrt * sqrt(nn)) /
             pow(nn, ratio(t.quarter_power, 4));
    }
    const Interval b = error_bound(gd(), n);
    EXPECT_NEAR(sum.midpoint_double(), b.midpoint_double(), 1e-12 * b.midpoint_double());
  }
}

TEST(ErrorBound, ValidityFloor) {
  EXPECT_NO_THROW(error_bound(gd(), 4));
  EXPECT_THROW(error_bound(gd(), 3), DomainError);
}

TEST(ErrorBound, DecreasingOnGrid) {
  Interval previous = error_bound(gd(), 10'000);
  for (std::uint64_t n = 20'000; n <= 2'000'000; n += 10'000) {
    const Interval current = error_bound(gd(), n);
    EXPECT_TRUE(current.certainly_less(previous)) << "n=" << n;
    previous = current;
  }
}

TEST(ErrorBound, VanishesAtInfinity) {
  EXPECT_LT(error_bound(gd(), 1'000'000).upper_double(), 1e-5);
}

TEST(ErrorBound, EnclosesExactTiltForSmallN) {
  RollSeries series(to_lattice(difference_die(goliath(), david())).dist);
  for (std::uint64_t n = 1; n <= 80; ++n) {
    series.advance();
    if (n < gd().validity_floor()) continue;
    const Interval exact(tilt_counts(series.current(), Rational(0)).tilt());
    const Interval gap = abs(exact - leading_term(gd(), n));
    EXPECT_TRUE(gap.certainly_less(error_bound(gd(), n))) << "n=" << n;
  }
}

TEST(Threshold, DavidGoliath) {
  const ThresholdCertificate c = certified_threshold(gd());
  EXPECT_EQ(c.threshold, 58117u);
  EXPECT_GE(c.check_radius, 20u * c.threshold);
  EXPECT_EQ(c.tilt_sign, 1);
  EXPECT_TRUE(c.tail_monotone);
  EXPECT_LT(leading_term(gd(), 58116).upper_double(), error_bound(gd(), 58116).lower_double());
  EXPECT_GT(leading_term(gd(), 58117).lower_double(), error_bound(gd(), 58117).upper_double());
}

TEST(Threshold, RadiusFactorIsHonoured) {
  ThresholdOptions options;
  options.radius_factor = 50;
  const ThresholdCertificate c = certified_threshold(gd(), options);
  EXPECT_EQ(c.threshold, 58117u);
  EXPECT_GE(c.check_radius, 50u * 58117u);
}

TEST(Threshold, Refusals) {
  EXPECT_THROW(certified_threshold(compute_params(to_lattice(parse_die("-1,0,1")).dist)), NoLeadingTerm);
  EXPECT_THROW(certified_threshold(compute_params(to_lattice(parse_die("-6,0,3,3")).dist)), UnsupportedSpan);
  EXPECT_THROW(certified_threshold(compute_params(to_lattice(parse_die("-1,-1,2")).dist)), UnsupportedSpan);
}

TEST(Beta, ShiftedLattice) {
  // {-1,-1,2}: span 3, shift 2, so beta depends on n mod 3.
  const EdgeworthParams p = compute_params(to_lattice(parse_die("-1,-1,2")).dist);
  EXPECT_EQ(p.span, 3);
  EXPECT_EQ(p.shift, 2);
  const Interval sigma = sqrt(Interval(Rational(2)));
  const Interval b1 = beta_at(p, 1);  // (3/2 - 2) / sigma
  EXPECT_EQ(b1.truncated(12), (Interval(ratio(-1, 2)) / sigma).truncated(12));
  const Interval b3 = beta_at(p, 3);  // (3/2 - 0) / sigma
  EXPECT_EQ(b3.truncated(12), (Interval(ratio(3, 2)) / sigma).truncated(12));
}

}  // namespace
}  // namespace antidice
