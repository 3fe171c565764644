#include "antidice/inversion.hpp"

#include <array>
#include <cmath>
#include <set>

#include "antidice/convolution.hpp"
#include "antidice/errors.hpp"
#include "antidice/parallel.hpp"

namespace antidice {

Die family_die(const Rational& x) {
  return Die({x, Rational(5), Rational(3), Rational(-9), Rational(1 - x)});
}

LatticeDistribution conditional_pair_distribution(std::uint64_t k) {
  if (k == 0) throw DomainError("roll count must be at least 1");
  const LatticeDistribution base = to_lattice(Die({Rational(5), Rational(3), Rational(-9)})).dist;
  const LatticeDistribution base_sq = convolve(base, base);

  // Support: free rolls j = k - 2A contribute [-9j, 5j], matched pairs add A.
  const auto lo = static_cast<std::int64_t>(-9 * static_cast<std::int64_t>(k));
  const auto hi = static_cast<std::int64_t>(5 * static_cast<std::int64_t>(k));
  std::vector<BigInt> weights(static_cast<std::size_t>(hi - lo + 1));

  // Walk A from floor(k/2) down to 0 so the free part grows by base^2 per step.
  std::uint64_t pairs = k / 2;
  LatticeDistribution free_part = (k % 2 == 0) ? LatticeDistribution::delta(0) : base;
  BigInt coefficient;
  BigInt choose_pairs;
  while (true) {
    // k! / (A! A! (k-2A)!) = C(k, 2A) * C(2A, A)
    mpz_bin_uiui(coefficient.get_mpz_t(), k, 2 * pairs);
    mpz_bin_uiui(choose_pairs.get_mpz_t(), 2 * pairs, pairs);
    coefficient *= choose_pairs;
    const std::int64_t shift = static_cast<std::int64_t>(pairs);
    for (std::size_t i = 0; i < free_part.size(); ++i) {
      const std::int64_t v = free_part.offset() + static_cast<std::int64_t>(i) + shift;
      mpz_addmul(weights[static_cast<std::size_t>(v - lo)].get_mpz_t(), free_part.weights()[i].get_mpz_t(),
                 coefficient.get_mpz_t());
    }
    if (pairs == 0) break;
    --pairs;
    free_part = convolve(free_part, base_sq);
  }
  return LatticeDistribution(lo, std::move(weights));
}

TiltInvariance tilt_invariance_check(const Rational& x1, const Rational& x2, std::uint64_t k) {
  if (k == 0) throw DomainError("roll count must be at least 1");
  const Rational limit(BigInt(static_cast<unsigned long>(9 * k)));
  if (!(x1 > limit && x2 > limit)) {
    throw DomainError("tilt invariance needs x > 9k = " + to_string(limit));
  }
  TiltInvariance out;
  out.first = tilt_counts(power(to_lattice(family_die(x1)).dist, k), Rational(0));
  out.second = tilt_counts(power(to_lattice(family_die(x2)).dist, k), Rational(0));
  const TiltCounts cond = tilt_counts(conditional_pair_distribution(k), Rational(0));
  out.conditional_margin = cond.above - cond.below;
  out.holds = out.first == out.second && out.first.above - out.first.below == out.conditional_margin;
  return out;
}

namespace {

FamilyPoint scan_point(const Rational& x, std::uint64_t kmax, std::stop_token stop) {
  FamilyPoint point;
  point.x = x;
  point.kmax_searched = kmax;
  const Die die = family_die(x);
  const LatticeDie lattice = to_lattice(die);
  point.span = Rational(BigInt(span_shift(lattice.dist).span), lattice.scale);
  point.span.canonicalize();
  point.third_moment_sign = sgn(raw_moment(die, 3));
  point.hypothesis_holds = point.span == 1 && point.third_moment_sign > 0;

  RollSeries series(lattice.dist);
  for (std::uint64_t k = 1; k <= kmax; ++k) {
    if (stop.stop_requested()) throw Cancelled();
    series.advance();
    const Relation r = relation_to_zero(series.current());
    if (r == Relation::win) continue;
    if (k == 1) {
      point.outcome = FamilyOutcome::no_winning_start;
      if (r == Relation::tie) point.tie_at = 1;
    } else if (r == Relation::tie) {
      point.outcome = FamilyOutcome::tie_interrupted;
      point.tie_at = k;
    } else {
      point.outcome = FamilyOutcome::inverted;
      point.first_inversion = k;
    }
    return point;
  }
  point.outcome = FamilyOutcome::no_inversion;
  return point;
}

}  // namespace

std::vector<FamilyPoint> first_inversion_scan(std::span<const Rational> xs, std::uint64_t kmax,
                                              const FamilyScanOptions& options) {
  if (kmax == 0) throw DomainError("kmax must be at least 1");
  std::vector<FamilyPoint> out(xs.size());
  parallel_for(xs.size(), options.jobs, [&](std::size_t i) { out[i] = scan_point(xs[i], kmax, options.stop); },
               options.stop);
  if (options.stop.stop_requested()) throw Cancelled();
  return out;
}

std::vector<Rational> family_grid(const Rational& x_min, const Rational& x_max, const Rational& step) {
  if (step <= 0) throw DomainError("x step must be positive");
  if (x_min > x_max) throw DomainError("x_min exceeds x_max");
  std::vector<Rational> xs;
  for (Rational x = x_min; x <= x_max; x += step) xs.push_back(x);
  return xs;
}

QuadraticFit quadratic_fit(std::span<const std::pair<Rational, Rational>> points) {
  std::set<Rational> distinct;
  for (const auto& p : points) distinct.insert(p.first);
  if (distinct.size() < 3) throw DomainError("quadratic fit needs at least three distinct x values");

  // Normal equations M c = t with M[i][j] = sum x^(i+j), t[i] = sum y x^i,
  // unknowns ordered (c0, c1, c2).
  std::array<Rational, 5> power_sums{};
  std::array<Rational, 3> rhs{};
  for (const auto& [x, y] : points) {
    Rational xp = 1;
    for (std::size_t p = 0; p < 5; ++p) {
      power_sums[p] += xp;
      if (p < 3) rhs[p] += y * xp;
      xp *= x;
    }
  }
  std::array<std::array<Rational, 4>, 3> m;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = power_sums[i + j];
    m[i][3] = rhs[i];
  }
  for (std::size_t col = 0; col < 3; ++col) {
    std::size_t pivot = col;
    while (pivot < 3 && m[pivot][col] == 0) ++pivot;
    if (pivot == 3) throw DomainError("degenerate quadratic fit");
    std::swap(m[col], m[pivot]);
    for (std::size_t r = 0; r < 3; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  QuadraticFit fit;
  fit.c0 = m[0][3] / m[0][0];
  fit.c1 = m[1][3] / m[1][1];
  fit.c2 = m[2][3] / m[2][2];
  Rational sq = 0;
  for (const auto& [x, y] : points) {
    const Rational e = y - (fit.c2 * x * x + fit.c1 * x + fit.c0);
    sq += e * e;
  }
  fit.residual = std::sqrt(sq.get_d());
  return fit;
}

}  // namespace antidice
