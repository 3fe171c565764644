#pragma once

#include <cstdint>
#include <stop_token>
#include <vector>

#include "antidice/lattice.hpp"

namespace antidice {

enum class ConvolutionKernel {
  automatic,   ///< schoolbook for short or sparse inputs, Kronecker otherwise
  schoolbook,  ///< direct sum over nonzero pairs
  kronecker,   ///< pack into one big integer with guard bits, multiply, unpack
};

/// Exact convolution: weight(z) = sum_x w1(x) * w2(z - x).
LatticeDistribution convolve(const LatticeDistribution& lhs, const LatticeDistribution& rhs,
                             ConvolutionKernel kernel = ConvolutionKernel::automatic);

/// k-fold self-convolution by binary exponentiation; power(d, 0) is delta(0).
/// Throws Cancelled if `stop` is triggered between convolution steps.
LatticeDistribution power(const LatticeDistribution& base, std::uint64_t k,
                          ConvolutionKernel kernel = ConvolutionKernel::automatic,
                          std::stop_token stop = {});

/// Lazily cached base^(2^i), so repeated jumps to arbitrary roll counts
/// share their squarings.
class PowerCache {
 public:
  explicit PowerCache(LatticeDistribution base,
                      ConvolutionKernel kernel = ConvolutionKernel::automatic);

  const LatticeDistribution& base() const noexcept { return squares_.front(); }
  /// base^(2^i)
  const LatticeDistribution& square(unsigned i, std::stop_token stop = {});
  LatticeDistribution power(std::uint64_t k, std::stop_token stop = {});

 private:
  std::vector<LatticeDistribution> squares_;
  ConvolutionKernel kernel_;
};

/// base^k advanced one roll at a time: each step is a single convolution
/// with the (short) base.
class RollSeries {
 public:
  explicit RollSeries(LatticeDistribution base,
                      ConvolutionKernel kernel = ConvolutionKernel::automatic);

  /// Jumps to base^k through the power-of-two cache.
  void seek(std::uint64_t k, std::stop_token stop = {});
  /// Resumes from a known base^k (e.g. a checkpoint).
  void restore(std::uint64_t k, LatticeDistribution current);
  void advance();

  std::uint64_t rolls() const noexcept { return rolls_; }
  const LatticeDistribution& current() const noexcept { return current_; }
  const LatticeDistribution& base() const noexcept { return cache_.base(); }

 private:
  PowerCache cache_;
  ConvolutionKernel kernel_;
  std::uint64_t rolls_ = 0;
  LatticeDistribution current_;
};

namespace detail {

std::vector<BigInt> schoolbook_product(std::span<const BigInt> a, std::span<const BigInt> b);
std::vector<BigInt> kronecker_product(std::span<const BigInt> a, std::span<const BigInt> b);

}  // namespace detail

}  // namespace antidice
