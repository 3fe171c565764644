#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

#include "antidice/convolution.hpp"
#include "antidice/die.hpp"
#include "antidice/lattice.hpp"

namespace antidice {

/// Outcome after k rolls, from the first die's point of view. The numeric
/// values are the trinary digits.
enum class Relation : std::uint8_t { loss = 0, tie = 1, win = 2 };

char to_char(Relation r);
/// 'L', 'T' or 'W'; throws DomainError otherwise.
Relation relation_from_char(char c);
Relation reversed(Relation r);

/// Relations for k = 1..kmax.
class DominanceSequence {
 public:
  DominanceSequence() = default;
  explicit DominanceSequence(std::vector<Relation> labels) : labels_(std::move(labels)) {}
  /// Parses an "LTW" string.
  static DominanceSequence parse(std::string_view text);

  std::size_t size() const noexcept { return labels_.size(); }
  /// Relation after `rolls` rolls (1-based).
  Relation at_roll(std::size_t rolls) const { return labels_.at(rolls - 1); }
  std::span<const Relation> labels() const noexcept { return labels_; }
  void push_back(Relation r) { labels_.push_back(r); }

  std::string to_string() const;

  friend bool operator==(const DominanceSequence&, const DominanceSequence&) = default;

 private:
  std::vector<Relation> labels_;
};

/// Total weight strictly above, equal to, and strictly below a center.
struct TiltCounts {
  BigInt above;
  BigInt equal;
  BigInt below;

  BigInt total() const { return above + equal + below; }
  /// (above - below) / total
  Rational tilt() const;
  Relation relation() const;

  friend bool operator==(const TiltCounts&, const TiltCounts&) = default;
};

TiltCounts tilt_counts(const LatticeDistribution& d, const Rational& center);
/// Centered at the distribution's own mean.
TiltCounts tilt_counts(const LatticeDistribution& d);

/// Sign of P(X > 0) - P(X < 0), without materialising the equal bucket.
Relation relation_to_zero(const LatticeDistribution& d);

/// Does A beat B when each is rolled `rolls` times and summed?
Relation compare(const Die& a, const Die& b, std::uint64_t rolls);

DominanceSequence dominance_sequence(const Die& a, const Die& b, std::size_t kmax,
                                     std::stop_token stop = {});
/// Sequence of a difference distribution against the {0} die.
DominanceSequence dominance_sequence(const LatticeDistribution& difference, std::size_t kmax,
                                     std::stop_token stop = {});

struct TrinaryCode {
  std::string digits;  ///< earliest roll first
  BigInt value;
};

TrinaryCode trinary_code(const DominanceSequence& seq);

struct SpanShift {
  std::int64_t span;   ///< b
  std::int64_t shift;  ///< a, in [0, b)
};

/// Throws DomainError if the support is a single point.
SpanShift span_shift(const LatticeDistribution& d);

/// Smallest k such that rolls 1..k-1 all share one strict relation and roll k
/// has the opposite strict relation.
std::optional<std::size_t> first_inversion(const DominanceSequence& seq);
std::optional<std::size_t> first_inversion(const Die& a, const Die& b, std::size_t kmax);

enum class InversionStatus {
  inverted,           ///< strict prefix followed by the opposite strict relation
  no_inversion,       ///< the prefix relation held through kmax
  tie_interrupted,    ///< an exact tie ended the prefix
};

struct InversionReport {
  InversionStatus status;
  std::optional<std::size_t> rolls;  ///< inversion roll, or the tie roll
  std::optional<Relation> prefix;    ///< relation held before the inversion
  /// Smallest period <= the bound that the second half of the sequence obeys.
  std::optional<std::size_t> suffix_period;
};

/// Inversion witness plus a heuristic periodicity flag. A periodic-looking
/// suffix is not a proof of periodicity, and its absence is not a proof of
/// aperiodicity.
InversionReport analyze_inversion(const DominanceSequence& seq, std::size_t max_period);

std::optional<std::size_t> periodic_suffix(const DominanceSequence& seq, std::size_t max_period);

/// dice[0] beats dice[1] beats ... beats dice[n-1] beats dice[0], all strict.
/// Throws DomainError for fewer than three dice.
bool is_intransitive_cycle(std::span<const Die> dice, std::uint64_t rolls);

}  // namespace antidice
