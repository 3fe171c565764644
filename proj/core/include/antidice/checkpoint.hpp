#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "antidice/lattice.hpp"
#include "antidice/roll_range.hpp"

namespace antidice {

inline constexpr int kCheckpointFormatVersion = 1;

/// JSON object {"offset", "length", "total", "weights"} with big integers as
/// decimal strings.
std::string serialize_distribution(const LatticeDistribution& d);
/// Throws DomainError on malformed input or inconsistent length/total.
LatticeDistribution parse_distribution(std::string_view json_text);

/// State of an exhaustive verification after `rolls` rolls.
struct VerifyCheckpoint {
  std::string die_a;
  std::string die_b;
  RollRange range;
  std::string expectation;
  std::uint64_t rolls = 0;  ///< dist holds the difference die to this power
  std::vector<std::uint64_t> mismatches;
  BigInt scale = 1;
  LatticeDistribution dist = LatticeDistribution::delta(0);
};

/// Writes to a sibling temporary file and renames it into place.
void save_checkpoint(const std::filesystem::path& path, const VerifyCheckpoint& cp);
/// Empty when the file does not exist; throws DomainError when it is corrupt
/// or has a different format version.
std::optional<VerifyCheckpoint> load_checkpoint(const std::filesystem::path& path);

}  // namespace antidice
