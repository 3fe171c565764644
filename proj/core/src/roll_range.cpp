#include "antidice/roll_range.hpp"

#include <charconv>

#include "antidice/errors.hpp"
#include "antidice/rational.hpp"

namespace antidice {

namespace {

std::uint64_t parse_count(std::string_view s, std::string_view whole) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError("malformed roll range '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

RollRange parse_roll_range(std::string_view text) {
  RollRange r;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    r.first = parse_count(text.substr(0, dots), text);
    r.last = parse_count(text.substr(dots + 2), text);
  } else {
    r.first = r.last = parse_count(text, text);
  }
  if (r.first == 0) throw DomainError("roll counts start at 1");
  if (r.first > r.last) throw DomainError("empty roll range '" + std::string(text) + "'");
  return r;
}

std::string to_string(const RollRange& range) {
  return std::to_string(range.first) + ".." + std::to_string(range.last);
}

}  // namespace antidice
