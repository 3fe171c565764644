#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "antidice/interval.hpp"
#include "antidice/lattice.hpp"
#include "antidice/rational.hpp"

namespace antidice {

/// Constants of the explicit Edgeworth tilt expansion for one balanced
/// lattice distribution X. Moments are exact; everything derived from
/// square roots, pi or e is an outward-rounded interval.
///
///   T(X[n]) = -nu3 / (3 sqrt(2 pi n)) + E,   |E| <= error_bound(n)
struct EdgeworthParams {
  std::int64_t shift = 0;  ///< a
  std::int64_t span = 1;   ///< b
  Rational m_min;          ///< smallest point probability of X
  Rational c_norm;         ///< C, l1-norm certificate constant
  Rational mu1, mu2, mu3, mu4;

  Interval sigma;
  Interval nu3, nu4;
  Interval beta;  ///< (b/2 - (n a mod b)) / sigma at n a = 0 mod b
  Interval p0, p1;
  Interval q1, q2, q3, q4, q5;
  Interval r;
  Interval n_min;

  /// Smallest integer n at which the expansion is valid: ceil(n_min).
  std::uint64_t validity_floor() const;
};

struct EdgeworthOptions {
  /// Overrides the default C = 2b.
  std::optional<Rational> c_norm;
};

/// Throws DomainError if the distribution is not balanced or has a single
/// support point.
EdgeworthParams compute_params(const LatticeDistribution& d, const EdgeworthOptions& options = {});

Interval beta_at(const EdgeworthParams& p, std::uint64_t n);

/// -nu3 / (3 sqrt(2 pi)), the coefficient of 1/sqrt(n).
Interval leading_coefficient(const EdgeworthParams& p);
Interval leading_term(const EdgeworthParams& p, std::uint64_t n);

/// ((-c) mod b - c mod b) / sigma - nu3, with both residues in [0, b).
Interval L_function(const EdgeworthParams& p, std::int64_t c);

/// One summand of the error bound:
///   coefficient * exp(-exp_linear * n - exp_sqrt * sqrt(n)) * n^(-quarter_power / 4)
struct BoundTerm {
  Interval coefficient;
  Interval exp_linear;
  Interval exp_sqrt;
  int quarter_power = 0;
};

/// The bound fully expanded into monomial-exponential terms, using the
/// n-dependent beta for shifted lattices.
std::vector<BoundTerm> error_bound_terms(const EdgeworthParams& p, std::uint64_t n);

/// Coefficients of the bound in its substituted form
///   c1/n + c2 e^(-c3 n)/n + c4/n^(3/2)
///     + e^(-c5 sqrt n) (c6/sqrt n + c7/n + c8 n^(-1/4) (c9/sqrt n + c10))
struct ExpandedBound {
  Interval inv_n;             ///< c1 = 2 q2
  Interval exp_coefficient;   ///< c2 = 1/r
  Interval exp_rate;          ///< c3 = r/2
  Interval inv_n_three_half;  ///< c4 = 2 q5 / sqrt(2 pi)
  Interval sqrt_rate;         ///< c5 = 2 / sqrt(q1)
  Interval tail_inv_sqrt;     ///< c6 = (1 + p0) sqrt(q1) / 2
  Interval tail_inv_n;        ///< c7 = 4 p0 q1
  Interval tail_quarter;      ///< c8 = 1 / (pi q1^(1/4))
  Interval inner_inv_sqrt;    ///< c9 = (q3 + q4) sqrt(q1) / 2
  Interval inner_constant;    ///< c10 = 2 q4
};

ExpandedBound expanded_bound(const EdgeworthParams& p);

/// Upper end of this interval is a rigorous bound on |E| at n.
/// Throws DomainError below validity_floor().
Interval error_bound(const EdgeworthParams& p, std::uint64_t n);

struct ThresholdOptions {
  std::uint64_t radius_factor = 20;  ///< scan [floor, radius_factor * N]
  std::uint64_t scan_limit = 10'000'000'000ULL;
};

struct ThresholdCertificate {
  std::uint64_t threshold = 0;     ///< N: |leading| > bound for every n >= N
  std::uint64_t check_radius = 0;  ///< scanned through this n
  int tilt_sign = 0;               ///< sign of the tilt for all n >= N
  bool tail_monotone = false;      ///< sqrt(n) * bound decreasing beyond check_radius
  std::uint64_t evaluations = 0;   ///< bound evaluations performed by the scan
};

/// Smallest N at or above the validity floor such that the leading term
/// dominates the error bound at every n in [N, check_radius], with
/// check_radius >= radius_factor * N, plus a closed-form tail certificate.
/// Throws NoLeadingTerm when mu3 = 0, UnsupportedSpan unless b = 1 and a = 0.
ThresholdCertificate certified_threshold(const EdgeworthParams& p,
                                         const ThresholdOptions& options = {});

}  // namespace antidice
