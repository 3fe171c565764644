#include "antidice/dominance.hpp"

#include <numeric>

#include "antidice/errors.hpp"

namespace antidice {

char to_char(Relation r) {
  switch (r) {
    case Relation::loss: return 'L';
    case Relation::tie: return 'T';
    case Relation::win: return 'W';
  }
  return '?';
}

Relation relation_from_char(char c) {
  switch (c) {
    case 'L': return Relation::loss;
    case 'T': return Relation::tie;
    case 'W': return Relation::win;
    default: throw DomainError(std::string("invalid relation label '") + c + "'");
  }
}

Relation reversed(Relation r) {
  switch (r) {
    case Relation::loss: return Relation::win;
    case Relation::win: return Relation::loss;
    case Relation::tie: return Relation::tie;
  }
  return r;
}

DominanceSequence DominanceSequence::parse(std::string_view text) {
  std::vector<Relation> labels;
  labels.reserve(text.size());
  for (char c : text) labels.push_back(relation_from_char(c));
  return DominanceSequence(std::move(labels));
}

std::string DominanceSequence::to_string() const {
  std::string out;
  out.reserve(labels_.size());
  for (Relation r : labels_) out += to_char(r);
  return out;
}

Rational TiltCounts::tilt() const {
  Rational t(above - below, total());
  t.canonicalize();
  return t;
}

Relation TiltCounts::relation() const {
  const int c = cmp(above, below);
  return c > 0 ? Relation::win : (c < 0 ? Relation::loss : Relation::tie);
}

TiltCounts tilt_counts(const LatticeDistribution& d, const Rational& center) {
  BigInt floor_center;
  mpz_fdiv_q(floor_center.get_mpz_t(), center.get_num_mpz_t(), center.get_den_mpz_t());
  const bool integral = center.get_den() == 1;
  TiltCounts out{0, 0, 0};
  const BigInt lo(static_cast<long>(d.min_value()));
  for (std::size_t i = 0; i < d.size(); ++i) {
    const BigInt& w = d.weights()[i];
    if (w == 0) continue;
    const BigInt v = lo + static_cast<unsigned long>(i);
    const int c = cmp(v, floor_center);
    if (c > 0) {
      out.above += w;
    } else if (c == 0 && integral) {
      out.equal += w;
    } else {
      out.below += w;
    }
  }
  return out;
}

TiltCounts tilt_counts(const LatticeDistribution& d) { return tilt_counts(d, d.mean()); }

Relation relation_to_zero(const LatticeDistribution& d) {
  if (d.min_value() >= 0 && d.max_value() <= 0) return Relation::tie;
  BigInt margin = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const std::int64_t v = d.offset() + static_cast<std::int64_t>(i);
    if (v > 0) {
      mpz_add(margin.get_mpz_t(), margin.get_mpz_t(), d.weights()[i].get_mpz_t());
    } else if (v < 0) {
      mpz_sub(margin.get_mpz_t(), margin.get_mpz_t(), d.weights()[i].get_mpz_t());
    }
  }
  const int s = sgn(margin);
  return s > 0 ? Relation::win : (s < 0 ? Relation::loss : Relation::tie);
}

Relation compare(const Die& a, const Die& b, std::uint64_t rolls) {
  if (rolls == 0) throw DomainError("roll count must be at least 1");
  const LatticeDie diff = to_lattice(difference_die(a, b));
  return relation_to_zero(power(diff.dist, rolls));
}

DominanceSequence dominance_sequence(const LatticeDistribution& difference, std::size_t kmax,
                                     std::stop_token stop) {
  if (kmax == 0) throw DomainError("kmax must be at least 1");
  RollSeries series(difference);
  std::vector<Relation> labels;
  labels.reserve(kmax);
  for (std::size_t k = 1; k <= kmax; ++k) {
    if (stop.stop_requested()) throw Cancelled();
    series.advance();
    labels.push_back(relation_to_zero(series.current()));
  }
  return DominanceSequence(std::move(labels));
}

DominanceSequence dominance_sequence(const Die& a, const Die& b, std::size_t kmax,
                                     std::stop_token stop) {
  return dominance_sequence(to_lattice(difference_die(a, b)).dist, kmax, stop);
}

TrinaryCode trinary_code(const DominanceSequence& seq) {
  TrinaryCode code{std::string(), 0};
  code.digits.reserve(seq.size());
  for (Relation r : seq.labels()) {
    const auto digit = static_cast<unsigned>(r);
    code.digits += static_cast<char>('0' + digit);
    code.value = code.value * 3 + digit;
  }
  return code;
}

SpanShift span_shift(const LatticeDistribution& d) {
  if (d.support_size() < 2) throw DomainError("span is undefined for a single-point support");
  std::int64_t g = 0;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (d.weights()[i] != 0) g = std::gcd(g, static_cast<std::int64_t>(i));
  }
  std::int64_t a = d.min_value() % g;
  if (a < 0) a += g;
  return SpanShift{g, a};
}

std::optional<std::size_t> first_inversion(const DominanceSequence& seq) {
  const InversionReport report = analyze_inversion(seq, 0);
  if (report.status != InversionStatus::inverted) return std::nullopt;
  return report.rolls;
}

std::optional<std::size_t> first_inversion(const Die& a, const Die& b, std::size_t kmax) {
  return first_inversion(dominance_sequence(a, b, kmax));
}

InversionReport analyze_inversion(const DominanceSequence& seq, std::size_t max_period) {
  InversionReport report{InversionStatus::no_inversion, std::nullopt, std::nullopt, std::nullopt};
  report.suffix_period = periodic_suffix(seq, max_period);
  if (seq.size() == 0) return report;
  const Relation prefix = seq.at_roll(1);
  if (prefix == Relation::tie) {
    report.status = InversionStatus::tie_interrupted;
    report.rolls = 1;
    return report;
  }
  report.prefix = prefix;
  for (std::size_t k = 2; k <= seq.size(); ++k) {
    const Relation r = seq.at_roll(k);
    if (r == prefix) continue;
    report.status = r == Relation::tie ? InversionStatus::tie_interrupted : InversionStatus::inverted;
    report.rolls = k;
    return report;
  }
  return report;
}

std::optional<std::size_t> periodic_suffix(const DominanceSequence& seq, std::size_t max_period) {
  const std::size_t n = seq.size();
  const std::size_t start = n / 2;
  const std::size_t len = n - start;
  const auto labels = seq.labels();
  for (std::size_t p = 1; p <= max_period && 2 * p <= len; ++p) {
    bool ok = true;
    for (std::size_t i = start; i + p < n && ok; ++i) ok = labels[i] == labels[i + p];
    if (ok) return p;
  }
  return std::nullopt;
}

bool is_intransitive_cycle(std::span<const Die> dice, std::uint64_t rolls) {
  if (dice.size() < 3) throw DomainError("an intransitive cycle needs at least three dice");
  for (std::size_t i = 0; i < dice.size(); ++i) {
    if (compare(dice[i], dice[(i + 1) % dice.size()], rolls) != Relation::win) return false;
  }
  return true;
}

}  // namespace antidice
