#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "antidice/die.hpp"
#include "antidice/rational.hpp"

namespace antidice {

/// Exact distribution on a contiguous run of integers.
///
/// weights()[i] is the (unnormalised) weight of value offset() + i, and the
/// probability of v is weight_at(v) / total(). The run is trimmed so the
/// first and last weights are nonzero; total() is always at least 1.
class LatticeDistribution {
 public:
  /// Trims zero weights at both ends. Throws DomainError if every weight is
  /// zero or any weight is negative.
  LatticeDistribution(std::int64_t offset, std::vector<BigInt> weights);

  /// Point mass of weight 1 at `value`; delta(0) is the convolution identity.
  static LatticeDistribution delta(std::int64_t value = 0);

  std::int64_t offset() const noexcept { return offset_; }
  std::int64_t min_value() const noexcept { return offset_; }
  std::int64_t max_value() const noexcept {
    return offset_ + static_cast<std::int64_t>(weights_.size()) - 1;
  }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const BigInt> weights() const noexcept { return weights_; }
  const BigInt& total() const noexcept { return total_; }

  /// Zero outside the stored run.
  const BigInt& weight_at(std::int64_t value) const;
  Rational probability(std::int64_t value) const;

  Rational mean() const;
  Rational raw_moment(unsigned k) const;
  /// E[(X - mean)^k].
  Rational central_moment(unsigned k) const;
  /// Number of values with nonzero weight.
  std::size_t support_size() const;

  LatticeDistribution negated() const;
  LatticeDistribution shifted(std::int64_t c) const;

  friend bool operator==(const LatticeDistribution&, const LatticeDistribution&) = default;

 private:
  struct Trusted {};
  LatticeDistribution(Trusted, std::int64_t offset, std::vector<BigInt> weights, BigInt total);
  friend LatticeDistribution make_trusted_distribution(std::int64_t, std::vector<BigInt>, BigInt);

  std::int64_t offset_ = 0;
  std::vector<BigInt> weights_;
  BigInt total_;
};

/// A die mapped onto the integers: every face f sits at value scale * f.
struct LatticeDie {
  BigInt scale;
  LatticeDistribution dist;
};

/// scale = lcm of face denominators; weights are face multiplicities.
LatticeDie to_lattice(const Die& die);

/// Inverse of to_lattice: faces value / scale, repeated by weight.
Die from_lattice(const LatticeDie& lattice);

/// Builds an already-trimmed distribution without re-validating; for the
/// convolution kernels, which produce trimmed nonnegative output by
/// construction.
LatticeDistribution make_trusted_distribution(std::int64_t offset, std::vector<BigInt> weights,
                                              BigInt total);

}  // namespace antidice
