#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stop_token>
#include <string>
#include <utility>
#include <vector>

#include "antidice/die.hpp"
#include "antidice/dominance.hpp"

namespace antidice {

// Balanced, normalised 3- and 4-sided dice swept against the {0} die.

enum class Domain {
  three_sided,             ///< {1, x, -1-x}
  four_sided_fundamental,  ///< {1, x, y, -1-x-y} on the non-redundant region
  four_sided_full,         ///< {1, x, y, -1-x-y} with |x|, |y| <= 1
};

std::string to_string(Domain d);
/// "three", "fundamental" or "full".
Domain parse_domain(std::string_view text);

struct GridSpec {
  std::uint32_t resolution = 200;  ///< grid denominator q
  std::size_t kmax = 20;
  Domain domain = Domain::four_sided_fundamental;
  // Three-sided sweep range; interior points only unless include_endpoints.
  Rational x_min = ratio(-1, 2);
  Rational x_max = 0;
  bool include_endpoints = false;

  /// Throws DomainError for q < 2, kmax < 1 or an empty x range.
  void validate() const;
};

struct OutcomeRecord {
  Rational x;
  std::optional<Rational> y;
  DominanceSequence labels;
  std::string code;  ///< trinary digits, first roll first

  friend bool operator==(const OutcomeRecord&, const OutcomeRecord&) = default;
};

Die die3(const Rational& x);
Die die4(const Rational& x, const Rational& y);

/// -1/3 <= x <= 1 and -(1+x)/2 <= y <= -|x|, boundary included.
bool in_fundamental_domain(const Rational& x, const Rational& y);

/// Labels and code of `die` against {0} over kmax rolls.
OutcomeRecord evaluate_point(const Die& die, const Rational& x, std::optional<Rational> y, std::size_t kmax);

/// Sample points in ascending order.
std::vector<Rational> three_sided_points(const GridSpec& spec);
/// Points (x, y) with x = i/q, y = j/q inside the spec's domain, ascending.
std::vector<std::pair<Rational, Rational>> four_sided_points(const GridSpec& spec);

struct SweepOptions {
  unsigned jobs = 1;
  std::stop_token stop;
};

/// Records sorted by coordinates regardless of worker scheduling.
std::vector<OutcomeRecord> sweep3(const GridSpec& spec, const SweepOptions& options = {});
std::vector<OutcomeRecord> sweep4(const GridSpec& spec, const SweepOptions& options = {});

/// Deviations from the observed 3-sided behaviour: dice whose largest face is
/// positive never tie and always lose after a multiple of three rolls.
struct ThreeSidedAudit {
  std::vector<Rational> ties;
  std::vector<std::pair<Rational, std::size_t>> non_loss_at_multiple_of_three;

  bool clean() const { return ties.empty() && non_loss_at_multiple_of_three.empty(); }
};

ThreeSidedAudit audit_three_sided(const std::vector<OutcomeRecord>& records);

/// Rectangular pixel grid: columns by increasing x, rows by decreasing y.
/// Three-sided maps have a single row and no y.
struct GridLayout {
  std::vector<Rational> columns;
  std::vector<std::optional<Rational>> rows;
};

GridLayout grid_layout(const GridSpec& spec);
bool in_spec_domain(const GridSpec& spec, const Rational& x, const std::optional<Rational>& y);

// ---- CSV / PGM ------------------------------------------------------------

/// Header "x,labels,code" or "x,y,labels,code"; coordinates as exact "p/q".
void write_csv(const std::vector<OutcomeRecord>& records, std::ostream& out);
void write_csv(const std::vector<OutcomeRecord>& records, const std::filesystem::path& path);
std::vector<OutcomeRecord> read_csv(std::istream& in);

/// Binary P5, 16-bit big-endian. Each pixel's gray value is the base-3 value
/// of the first `depth` code digits scaled to [0, 65535]; grid points outside
/// the domain are 65535. Throws DomainError for depth outside [1, kmax] or a
/// domain point with no record.
void write_pgm(const std::vector<OutcomeRecord>& records, const GridSpec& spec, std::ostream& out,
               std::size_t depth);
void write_pgm(const std::vector<OutcomeRecord>& records, const GridSpec& spec,
               const std::filesystem::path& path, std::size_t depth);

/// Same layout, shaded by the single relation after `rolls` rolls.
void write_pgm_slice(const std::vector<OutcomeRecord>& records, const GridSpec& spec, std::ostream& out,
                     std::size_t rolls);
void write_pgm_slice(const std::vector<OutcomeRecord>& records, const GridSpec& spec,
                     const std::filesystem::path& path, std::size_t rolls);

/// Gray level for the base-3 value of `digits` (0 -> 0, all 2s -> 65535).
std::uint16_t gray_level(std::string_view digits);

}  // namespace antidice
