#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "antidice/convolution.hpp"
#include "antidice/die.hpp"
#include "antidice/dominance.hpp"
#include "antidice/roll_range.hpp"

namespace antidice {

using Expectation = std::function<Relation(std::uint64_t rolls)>;

/// `fallback` everywhere except the listed roll counts, which get `exception`.
Expectation expect_except(Relation fallback, std::vector<std::uint64_t> rolls, Relation exception);

struct VerifyOptions {
  /// Checkpoint file; written at every power-of-two roll count, every
  /// `checkpoint_every` rolls (if nonzero), at the end and on cancellation.
  std::optional<std::filesystem::path> checkpoint;
  /// Continue from `checkpoint` if it exists and matches this run.
  bool resume = false;
  std::uint64_t checkpoint_every = 0;
  /// Identifies the expectation inside checkpoints, so a resume cannot mix
  /// two different expectations.
  std::string expectation_tag;
  /// Contiguous shards verified in parallel; requires no checkpoint.
  unsigned jobs = 1;
  ConvolutionKernel kernel = ConvolutionKernel::automatic;
  std::stop_token stop;
  /// Called after each verified roll count (from the sequential path only).
  std::function<void(std::uint64_t rolls)> progress;
};

struct VerifyReport {
  RollRange range;
  std::vector<std::uint64_t> mismatches;  ///< ascending
  std::uint64_t verified_through = 0;     ///< last roll count checked
  std::uint64_t resumed_from = 0;         ///< 0 when started fresh
  bool completed = false;

  friend bool operator==(const VerifyReport&, const VerifyReport&) = default;
};

/// Evaluates compare(a, b, k) exactly for every k in `range` and collects the
/// roll counts whose relation differs from `expected(k)`.
VerifyReport exhaustive_verify(const Die& a, const Die& b, RollRange range, const Expectation& expected,
                               const VerifyOptions& options = {});

}  // namespace antidice
