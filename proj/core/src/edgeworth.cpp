#include "antidice/edgeworth.hpp"

#include <algorithm>
#include <functional>

#include "antidice/dominance.hpp"
#include "antidice/errors.hpp"

namespace antidice {

namespace {

Interval iv(long v) { return Interval(v); }
Interval iv(const Rational& q) { return Interval(q); }

std::int64_t floor_mod(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

Interval q5_from(const Interval& q3, const Interval& q4) {
  return q3 * q3 * q3 / iv(6) + iv(3) * q3 * q3 * q4 / iv(2) + iv(15) * q3 * q4 * q4 / iv(2) +
         iv(35) * q4 * q4 * q4 / iv(2);
}

// n^(-quarters/4) from the fourth root of n.
Interval inverse_quarter_power(const Interval& fourth_root, int quarters) {
  Interval denom(1L);
  for (int i = 0; i < quarters; ++i) denom *= fourth_root;
  return Interval(1L) / denom;
}

Interval evaluate(const std::vector<BoundTerm>& terms, std::uint64_t n) {
  const Interval nn(Rational(BigInt(static_cast<unsigned long>(n))));
  const Interval root = sqrt(nn);
  const Interval fourth = sqrt(root);
  Interval sum;
  for (const BoundTerm& t : terms) {
    sum += t.coefficient * exp(-(t.exp_linear * nn + t.exp_sqrt * root)) *
           inverse_quarter_power(fourth, t.quarter_power);
  }
  return sum;
}

}  // namespace

std::uint64_t EdgeworthParams::validity_floor() const {
  BigInt c;
  mpfr_get_z(c.get_mpz_t(), n_min.upper(), MPFR_RNDU);
  return std::max<std::uint64_t>(1, c.get_ui());
}

EdgeworthParams compute_params(const LatticeDistribution& d, const EdgeworthOptions& options) {
  if (d.support_size() < 2) throw DomainError("Edgeworth parameters need at least two support points");
  EdgeworthParams p;
  p.mu1 = d.raw_moment(1);
  if (p.mu1 != 0) throw DomainError("Edgeworth parameters need a balanced (mean zero) distribution");
  p.mu2 = d.raw_moment(2);
  p.mu3 = d.raw_moment(3);
  p.mu4 = d.raw_moment(4);

  const SpanShift ss = span_shift(d);
  p.span = ss.span;
  p.shift = ss.shift;
  const Rational b(static_cast<long>(p.span));

  BigInt smallest = 0;
  for (const BigInt& w : d.weights()) {
    if (w != 0 && (smallest == 0 || w < smallest)) smallest = w;
  }
  p.m_min = Rational(smallest, d.total());
  p.m_min.canonicalize();
  p.c_norm = options.c_norm.value_or(Rational(2) * b);
  if (p.c_norm <= 0) throw DomainError("C must be positive");

  const Interval pi = Interval::pi();
  const Interval mu2 = iv(p.mu2);
  p.sigma = sqrt(mu2);
  p.nu3 = iv(p.mu3) / (mu2 * p.sigma);
  p.nu4 = iv(Rational(p.mu4 / (p.mu2 * p.mu2)));
  p.beta = iv(b) / iv(2) / p.sigma;
  p.p0 = Interval::e() - iv(1);
  p.p1 = iv(3) * (pi - iv(3)) / (pi * pi * pi);
  p.q1 = iv(Rational(ratio(1, 5) + p.mu4 / (p.mu2 * p.mu2) / 24));
  p.q2 = p.p0 * p.q1 / iv(2) + iv(b * b) * p.p1 / mu2;
  p.q3 = abs(p.beta);
  p.q4 = abs(p.nu3) / iv(6);
  p.q5 = q5_from(p.q3, p.q4);
  const Interval pcs = pi * iv(p.c_norm) * p.sigma;
  p.r = iv(16) * iv(b * b) * iv(p.m_min) / (pcs * pcs);
  const Interval pi4 = pi * pi * pi * pi;
  p.n_min = max(max(p.q1 / iv(4), iv(1) / p.q1),
                iv(81) * iv(b * b * b * b) / (p.q1 * pi4 * mu2 * mu2));
  return p;
}

Interval beta_at(const EdgeworthParams& p, std::uint64_t n) {
  const std::int64_t residue =
      floor_mod(static_cast<std::int64_t>(n % static_cast<std::uint64_t>(p.span)) * p.shift, p.span);
  const Rational numer = ratio(p.span, 2) - Rational(residue);
  return iv(numer) / p.sigma;
}

Interval leading_coefficient(const EdgeworthParams& p) {
  return -p.nu3 / (iv(3) * sqrt(iv(2) * Interval::pi()));
}

Interval leading_term(const EdgeworthParams& p, std::uint64_t n) {
  if (n == 0) throw DomainError("leading term needs n >= 1");
  return leading_coefficient(p) / sqrt(iv(Rational(BigInt(static_cast<unsigned long>(n)))));
}

Interval L_function(const EdgeworthParams& p, std::int64_t c) {
  const std::int64_t b = p.span;
  const std::int64_t diff = floor_mod(-c, b) - floor_mod(c, b);
  return iv(static_cast<long>(diff)) / p.sigma - p.nu3;
}

std::vector<BoundTerm> error_bound_terms(const EdgeworthParams& p, std::uint64_t n) {
  const Interval q3 = abs(beta_at(p, n));
  const Interval q5 = q5_from(q3, p.q4);
  const Interval two_pi = iv(2) * Interval::pi();
  const Interval root_q1 = sqrt(p.q1);
  const Interval tail_rate = iv(2) / root_q1;
  const Interval quarter = iv(1) / (Interval::pi() * sqrt(root_q1));
  const Interval none;

  std::vector<BoundTerm> terms;
  terms.push_back({iv(2) * p.q2, none, none, 4});
  terms.push_back({iv(1) / p.r, p.r / iv(2), none, 4});
  terms.push_back({iv(2) * q5 / sqrt(two_pi), none, none, 6});
  terms.push_back({(iv(1) + p.p0) * root_q1 / iv(2), none, tail_rate, 2});
  terms.push_back({iv(4) * p.p0 * p.q1, none, tail_rate, 4});
  terms.push_back({quarter * (q3 + p.q4) * root_q1 / iv(2), none, tail_rate, 3});
  terms.push_back({quarter * iv(2) * p.q4, none, tail_rate, 1});
  return terms;
}

ExpandedBound expanded_bound(const EdgeworthParams& p) {
  const Interval root_q1 = sqrt(p.q1);
  return ExpandedBound{
      iv(2) * p.q2,
      iv(1) / p.r,
      p.r / iv(2),
      iv(2) * p.q5 / sqrt(iv(2) * Interval::pi()),
      iv(2) / root_q1,
      (iv(1) + p.p0) * root_q1 / iv(2),
      iv(4) * p.p0 * p.q1,
      iv(1) / (Interval::pi() * sqrt(root_q1)),
      (p.q3 + p.q4) * root_q1 / iv(2),
      iv(2) * p.q4,
  };
}

Interval error_bound(const EdgeworthParams& p, std::uint64_t n) {
  if (n < p.validity_floor()) {
    throw DomainError("error bound is only valid for n >= " + std::to_string(p.validity_floor()));
  }
  return evaluate(error_bound_terms(p, n), n);
}

ThresholdCertificate certified_threshold(const EdgeworthParams& p, const ThresholdOptions& options) {
  if (p.mu3 == 0) throw NoLeadingTerm("third moment is zero: no leading term to certify");
  if (p.span != 1 || p.shift != 0) {
    throw UnsupportedSpan("threshold certificate covers span 1, shift 0 only (got b=" +
                          std::to_string(p.span) + ", a=" + std::to_string(p.shift) + ")");
  }
  if (options.radius_factor < 1) throw DomainError("radius factor must be at least 1");

  // With b = 1 and a = 0 the terms do not depend on n.
  const std::vector<BoundTerm> terms = error_bound_terms(p, 0);
  for (const BoundTerm& t : terms) {
    if (mpfr_sgn(t.exp_linear.lower()) < 0 || mpfr_sgn(t.exp_sqrt.lower()) < 0 || t.quarter_power <= 0) {
      throw DomainError("error bound term is not monotone in n");
    }
  }
  const Interval coefficient = abs(leading_coefficient(p));
  ThresholdCertificate cert;
  cert.tilt_sign = p.mu3 < 0 ? 1 : -1;

  auto lead_at = [&](std::uint64_t n) {
    return coefficient / sqrt(iv(Rational(BigInt(static_cast<unsigned long>(n)))));
  };
  auto bound_at = [&](std::uint64_t n) {
    ++cert.evaluations;
    return evaluate(terms, n);
  };
  // Every bound term decreases in n and so does |leading|; a block passes if
  // the smallest leading value beats the largest bound value.
  auto block_passes = [&](std::uint64_t lo, std::uint64_t hi) {
    return bound_at(lo).certainly_less(lead_at(hi));
  };
  std::function<std::optional<std::uint64_t>(std::uint64_t, std::uint64_t)> largest_failure =
      [&](std::uint64_t lo, std::uint64_t hi) -> std::optional<std::uint64_t> {
    if (block_passes(lo, hi)) return std::nullopt;
    if (hi - lo < 4) {
      for (std::uint64_t n = hi + 1; n-- > lo;) {
        if (!block_passes(n, n)) return n;
      }
      return std::nullopt;
    }
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (auto r = largest_failure(mid + 1, hi)) return r;
    return largest_failure(lo, mid);
  };

  const std::uint64_t floor = p.validity_floor();
  std::uint64_t radius = floor * options.radius_factor;
  while (true) {
    const std::optional<std::uint64_t> fail = largest_failure(floor, radius);
    const std::uint64_t n = fail ? *fail + 1 : floor;
    if (n * options.radius_factor <= radius) {
      cert.threshold = n;
      break;
    }
    radius = n * options.radius_factor;
    if (radius > options.scan_limit) throw DomainError("threshold scan exceeded its limit");
  }
  cert.check_radius = radius;

  // Past the radius, sqrt(n) * term must keep decreasing:
  // exp_linear * n + exp_sqrt * sqrt(n) / 2 + (quarters / 4 - 1/2) > 0 at the
  // radius, and the left side only grows with n.
  const Interval rr(Rational(BigInt(static_cast<unsigned long>(radius))));
  cert.tail_monotone = true;
  for (const BoundTerm& t : terms) {
    const Interval slope = t.exp_linear * rr + t.exp_sqrt * sqrt(rr) / iv(2) +
                           iv(ratio(t.quarter_power - 2, 4));
    cert.tail_monotone = cert.tail_monotone && slope.positive();
  }
  return cert;
}

}  // namespace antidice
