#include "antidice/verify.hpp"

#include <algorithm>
#include <bit>

#include "antidice/checkpoint.hpp"
#include "antidice/errors.hpp"
#include "antidice/parallel.hpp"

namespace antidice {

Expectation expect_except(Relation fallback, std::vector<std::uint64_t> rolls, Relation exception) {
  std::sort(rolls.begin(), rolls.end());
  return [fallback, rolls = std::move(rolls), exception](std::uint64_t k) {
    return std::binary_search(rolls.begin(), rolls.end(), k) ? exception : fallback;
  };
}

namespace {

std::vector<std::uint64_t> verify_shard(const LatticeDistribution& diff, RollRange shard,
                                        const Expectation& expected, ConvolutionKernel kernel,
                                        std::stop_token stop) {
  std::vector<std::uint64_t> mismatches;
  RollSeries series(diff, kernel);
  series.seek(shard.first - 1, stop);
  for (std::uint64_t k = shard.first; k <= shard.last; ++k) {
    if (stop.stop_requested()) throw Cancelled();
    series.advance();
    if (relation_to_zero(series.current()) != expected(k)) mismatches.push_back(k);
  }
  return mismatches;
}

VerifyReport verify_sharded(const LatticeDistribution& diff, RollRange range, const Expectation& expected,
                            const VerifyOptions& options) {
  const std::uint64_t shards = std::min<std::uint64_t>(options.jobs, range.count());
  std::vector<RollRange> parts;
  const std::uint64_t per = range.count() / shards;
  const std::uint64_t extra = range.count() % shards;
  std::uint64_t next = range.first;
  for (std::uint64_t i = 0; i < shards; ++i) {
    const std::uint64_t len = per + (i < extra ? 1 : 0);
    parts.push_back(RollRange{next, next + len - 1});
    next += len;
  }
  std::vector<std::vector<std::uint64_t>> found(parts.size());
  parallel_for(parts.size(), options.jobs, [&](std::size_t i) {
    found[i] = verify_shard(diff, parts[i], expected, options.kernel, options.stop);
  }, options.stop);
  if (options.stop.stop_requested()) throw Cancelled();

  VerifyReport report;
  report.range = range;
  for (const auto& f : found) report.mismatches.insert(report.mismatches.end(), f.begin(), f.end());
  report.verified_through = range.last;
  report.completed = true;
  return report;
}

}  // namespace

VerifyReport exhaustive_verify(const Die& a, const Die& b, RollRange range, const Expectation& expected,
                               const VerifyOptions& options) {
  if (range.first == 0 || range.first > range.last) throw DomainError("invalid roll range");
  const LatticeDie diff = to_lattice(difference_die(a, b));
  if (options.jobs > 1) {
    if (options.checkpoint) throw DomainError("checkpointing requires a single job");
    return verify_sharded(diff.dist, range, expected, options);
  }

  VerifyCheckpoint state;
  state.die_a = to_string(a);
  state.die_b = to_string(b);
  state.range = range;
  state.expectation = options.expectation_tag;
  state.scale = diff.scale;

  VerifyReport report;
  report.range = range;
  RollSeries series(diff.dist, options.kernel);

  std::optional<VerifyCheckpoint> saved;
  if (options.resume && options.checkpoint) saved = load_checkpoint(*options.checkpoint);
  if (saved) {
    if (saved->die_a != state.die_a || saved->die_b != state.die_b || saved->range != range ||
        saved->expectation != state.expectation || saved->scale != state.scale) {
      throw DomainError("checkpoint " + options.checkpoint->string() + " belongs to a different run");
    }
    if (saved->rolls + 1 < range.first || saved->rolls > range.last) {
      throw DomainError("checkpoint roll count outside the requested range");
    }
    report.mismatches = saved->mismatches;
    report.resumed_from = saved->rolls;
    report.verified_through = saved->rolls >= range.first ? saved->rolls : 0;
    series.restore(saved->rolls, std::move(saved->dist));
  } else {
    series.seek(range.first - 1, options.stop);
  }

  auto save = [&] {
    if (!options.checkpoint) return;
    state.rolls = series.rolls();
    state.mismatches = report.mismatches;
    state.dist = series.current();
    save_checkpoint(*options.checkpoint, state);
  };

  for (std::uint64_t k = series.rolls() + 1; k <= range.last; ++k) {
    if (options.stop.stop_requested()) {
      save();
      return report;
    }
    series.advance();
    if (relation_to_zero(series.current()) != expected(k)) report.mismatches.push_back(k);
    report.verified_through = k;
    const bool every = options.checkpoint_every != 0 && k % options.checkpoint_every == 0;
    if (std::has_single_bit(k) || every) save();
    if (options.progress) options.progress(k);
  }
  save();
  report.completed = true;
  return report;
}

}  // namespace antidice
