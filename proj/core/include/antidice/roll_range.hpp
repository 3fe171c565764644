#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace antidice {

/// Inclusive range of roll counts, written "a..b" or as a single integer.
struct RollRange {
  std::uint64_t first = 1;
  std::uint64_t last = 1;

  std::uint64_t count() const noexcept { return last - first + 1; }
  friend bool operator==(const RollRange&, const RollRange&) = default;
};

/// Throws DomainError for malformed text, zero, or first > last.
RollRange parse_roll_range(std::string_view text);
std::string to_string(const RollRange& range);

}  // namespace antidice
