#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stop_token>
#include <utility>
#include <vector>

#include "antidice/die.hpp"
#include "antidice/dominance.hpp"
#include "antidice/lattice.hpp"

namespace antidice {

// The late-inversion family {x, 5, 3, -9, 1 - x} against the {0} die.

/// Always balanced: the faces sum to zero for every x.
Die family_die(const Rational& x);

/// Weights (out of 5^k sequences) of the k-roll sum restricted to sequences
/// that roll the x face and the 1 - x face equally often. Independent of x:
/// each matched pair contributes exactly 1.
LatticeDistribution conditional_pair_distribution(std::uint64_t k);

struct TiltInvariance {
  bool holds = false;
  TiltCounts first;
  TiltCounts second;
  /// above - below of the conditional distribution at 0.
  BigInt conditional_margin;
};

/// Compares tilt counts at 0 of family_die(x1)^k and family_die(x2)^k, and
/// both margins against the conditional distribution. Requires
/// min(x1, x2) > 9k strictly (DomainError otherwise).
TiltInvariance tilt_invariance_check(const Rational& x1, const Rational& x2, std::uint64_t k);

enum class FamilyOutcome {
  inverted,         ///< won every roll before first_inversion, then lost
  no_inversion,     ///< won through kmax
  no_winning_start, ///< lost or tied at roll 1
  tie_interrupted,  ///< exact tie ended the winning prefix
};

struct FamilyPoint {
  Rational x;
  std::optional<std::uint64_t> first_inversion;
  std::uint64_t kmax_searched = 0;
  FamilyOutcome outcome = FamilyOutcome::no_inversion;
  std::optional<std::uint64_t> tie_at;
  /// Span in face units (lattice span / scale) and sign of the third moment;
  /// the late-inversion argument assumes span 1 and a positive third moment.
  Rational span;
  int third_moment_sign = 0;
  bool hypothesis_holds = false;
};

struct FamilyScanOptions {
  unsigned jobs = 1;
  std::stop_token stop;
};

/// One FamilyPoint per x, in input order.
std::vector<FamilyPoint> first_inversion_scan(std::span<const Rational> xs, std::uint64_t kmax,
                                              const FamilyScanOptions& options = {});

/// x_min, x_min + step, ... <= x_max. Throws DomainError for step <= 0.
std::vector<Rational> family_grid(const Rational& x_min, const Rational& x_max, const Rational& step);

struct QuadraticFit {
  Rational c2, c1, c0;  ///< exact least-squares coefficients
  double residual = 0;  ///< Euclidean norm of the residuals
};

/// Least-squares k ~ c2 x^2 + c1 x + c0. Throws DomainError with fewer than
/// three distinct x values.
QuadraticFit quadratic_fit(std::span<const std::pair<Rational, Rational>> points);

}  // namespace antidice
