#include "antidice/mapper.hpp"

#include <algorithm>

#include "antidice/errors.hpp"
#include "antidice/lattice.hpp"
#include "antidice/parallel.hpp"

namespace antidice {

namespace {

BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Integers i with lo <= i/q <= hi.
std::pair<long, long> grid_bounds(const Rational& lo, const Rational& hi, long q) {
  const BigInt first = ceil_div(lo.get_num() * q, lo.get_den());
  const BigInt last = floor_div(hi.get_num() * q, hi.get_den());
  return {first.get_si(), last.get_si()};
}

std::vector<OutcomeRecord> evaluate_all(const std::vector<std::pair<Rational, std::optional<Rational>>>& pts,
                                        std::size_t kmax, bool three_sided, const SweepOptions& options) {
  std::vector<std::optional<OutcomeRecord>> slots(pts.size());
  parallel_for(pts.size(), options.jobs, [&](std::size_t i) {
    const auto& [x, y] = pts[i];
    const Die die = three_sided ? die3(x) : die4(x, *y);
    slots[i] = evaluate_point(die, x, y, kmax);
  }, options.stop);
  if (options.stop.stop_requested()) throw Cancelled();
  std::vector<OutcomeRecord> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace

std::string to_string(Domain d) {
  switch (d) {
    case Domain::three_sided: return "three";
    case Domain::four_sided_fundamental: return "fundamental";
    case Domain::four_sided_full: return "full";
  }
  return "?";
}

Domain parse_domain(std::string_view text) {
  if (text == "three") return Domain::three_sided;
  if (text == "fundamental") return Domain::four_sided_fundamental;
  if (text == "full") return Domain::four_sided_full;
  throw DomainError("unknown domain '" + std::string(text) + "' (expected three, fundamental or full)");
}

void GridSpec::validate() const {
  if (resolution < 2) throw DomainError("resolution must be at least 2");
  if (kmax < 1) throw DomainError("kmax must be at least 1");
  if (domain == Domain::three_sided && x_min >= x_max) throw DomainError("empty x range");
}

Die die3(const Rational& x) { return Die({Rational(1), x, Rational(-1 - x)}); }

Die die4(const Rational& x, const Rational& y) { return Die({Rational(1), x, y, Rational(-1 - x - y)}); }

bool in_fundamental_domain(const Rational& x, const Rational& y) {
  if (x < ratio(-1, 3) || x > 1) return false;
  const Rational lower = -(1 + x) / 2;
  const Rational upper = x < 0 ? Rational(x) : Rational(-x);
  return lower <= y && y <= upper;
}

OutcomeRecord evaluate_point(const Die& die, const Rational& x, std::optional<Rational> y, std::size_t kmax) {
  OutcomeRecord rec{x, std::move(y), dominance_sequence(to_lattice(die).dist, kmax), {}};
  rec.code = trinary_code(rec.labels).digits;
  return rec;
}

std::vector<Rational> three_sided_points(const GridSpec& spec) {
  spec.validate();
  const Rational step = (spec.x_max - spec.x_min) / spec.resolution;
  std::vector<Rational> xs;
  const long q = static_cast<long>(spec.resolution);
  for (long p = spec.include_endpoints ? 0 : 1; p <= (spec.include_endpoints ? q : q - 1); ++p) {
    xs.emplace_back(spec.x_min + step * p);
  }
  return xs;
}

GridLayout grid_layout(const GridSpec& spec) {
  spec.validate();
  GridLayout layout;
  if (spec.domain == Domain::three_sided) {
    layout.columns = three_sided_points(spec);
    layout.rows.emplace_back(std::nullopt);
    return layout;
  }
  const long q = static_cast<long>(spec.resolution);
  const bool full = spec.domain == Domain::four_sided_full;
  const auto [i0, i1] = grid_bounds(full ? Rational(-1) : ratio(-1, 3), Rational(1), q);
  const auto [j0, j1] = grid_bounds(Rational(-1), full ? Rational(1) : Rational(0), q);
  for (long i = i0; i <= i1; ++i) layout.columns.push_back(ratio(i, q));
  for (long j = j1; j >= j0; --j) layout.rows.emplace_back(ratio(j, q));
  return layout;
}

bool in_spec_domain(const GridSpec& spec, const Rational& x, const std::optional<Rational>& y) {
  switch (spec.domain) {
    case Domain::three_sided: return true;
    case Domain::four_sided_fundamental: return y && in_fundamental_domain(x, *y);
    case Domain::four_sided_full: return y && abs(x) <= 1 && abs(*y) <= 1;
  }
  return false;
}

std::vector<std::pair<Rational, Rational>> four_sided_points(const GridSpec& spec) {
  if (spec.domain == Domain::three_sided) throw DomainError("four-sided sweep needs a four-sided domain");
  const GridLayout layout = grid_layout(spec);
  std::vector<std::pair<Rational, Rational>> pts;
  for (const Rational& x : layout.columns) {
    for (auto it = layout.rows.rbegin(); it != layout.rows.rend(); ++it) {
      if (in_spec_domain(spec, x, *it)) pts.emplace_back(x, **it);
    }
  }
  return pts;
}

std::vector<OutcomeRecord> sweep3(const GridSpec& spec, const SweepOptions& options) {
  if (spec.domain != Domain::three_sided) throw DomainError("three-sided sweep needs the three domain");
  std::vector<std::pair<Rational, std::optional<Rational>>> pts;
  for (const Rational& x : three_sided_points(spec)) pts.emplace_back(x, std::nullopt);
  return evaluate_all(pts, spec.kmax, true, options);
}

std::vector<OutcomeRecord> sweep4(const GridSpec& spec, const SweepOptions& options) {
  std::vector<std::pair<Rational, std::optional<Rational>>> pts;
  for (const auto& [x, y] : four_sided_points(spec)) pts.emplace_back(x, y);
  return evaluate_all(pts, spec.kmax, false, options);
}

ThreeSidedAudit audit_three_sided(const std::vector<OutcomeRecord>& records) {
  ThreeSidedAudit audit;
  for (const OutcomeRecord& rec : records) {
    const auto labels = rec.labels.labels();
    if (std::find(labels.begin(), labels.end(), Relation::tie) != labels.end()) audit.ties.push_back(rec.x);
    // The multiple-of-three rule covers dice whose largest-magnitude face is positive.
    const auto sorted = die3(rec.x).sorted_faces();
    if (sorted.back() + sorted.front() <= 0) continue;
    for (std::size_t k = 3; k <= labels.size(); k += 3) {
      if (labels[k - 1] != Relation::loss) audit.non_loss_at_multiple_of_three.emplace_back(rec.x, k);
    }
  }
  return audit;
}

}  // namespace antidice
