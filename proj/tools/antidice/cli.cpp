#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "antidice/dominance.hpp"
#include "antidice/edgeworth.hpp"
#include "antidice/errors.hpp"
#include "antidice/inversion.hpp"
#include "antidice/mapper.hpp"
#include "antidice/parallel.hpp"
#include "antidice/verify.hpp"

namespace antidice::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { human, json, csv };

struct Env {
  std::ostream& out;
  std::ostream& err;
  std::stop_token stop;
  Format format = Format::human;
  unsigned jobs = 1;
};

void emit(Env& env, const Json& doc) { env.out << doc.dump(2) << '\n'; }

void reject_csv(const Env& env, const char* command) {
  if (env.format == Format::csv) throw DomainError(std::string("csv output is not available for ") + command);
}

std::string decimal(const Interval& v, int digits) {
  try {
    return v.truncated(digits);
  } catch (const std::runtime_error&) {
    // Only when the enclosure straddles a digit boundary.
    return v.approx(digits);
  }
}

Die die_arg(const std::string& text, const char* name) {
  try {
    return parse_die(text);
  } catch (const DomainError& e) {
    throw DomainError(std::string(name) + ": " + e.what());
  }
}

std::string relation_word(Relation r) {
  switch (r) {
    case Relation::loss: return "loss";
    case Relation::tie: return "tie";
    case Relation::win: return "win";
  }
  return "?";
}

void write_sequence_csv(std::ostream& out, const DominanceSequence& seq, std::uint64_t first) {
  out << "k,relation\n";
  for (std::size_t i = 0; i < seq.size(); ++i) out << first + i << ',' << to_char(seq.labels()[i]) << '\n';
}

// ---- compare ---------------------------------------------------------------

struct CompareArgs {
  std::string a, b, rolls = "1";
};

int cmd_compare(Env& env, const CompareArgs& args) {
  const Die a = die_arg(args.a, "--a");
  const Die b = die_arg(args.b, "--b");
  const RollRange range = parse_roll_range(args.rolls);
  const DominanceSequence full = dominance_sequence(a, b, range.last, env.stop);
  DominanceSequence seq;
  for (std::uint64_t k = range.first; k <= range.last; ++k) seq.push_back(full.at_roll(k));

  switch (env.format) {
    case Format::human: env.out << seq.to_string() << '\n'; break;
    case Format::csv: write_sequence_csv(env.out, seq, range.first); break;
    case Format::json:
      emit(env, Json{{"command", "compare"},
                     {"a", to_string(a)},
                     {"b", to_string(b)},
                     {"rolls", to_string(range)},
                     {"labels", seq.to_string()}});
      break;
  }
  return kOk;
}

// ---- sequence --------------------------------------------------------------

struct SequenceArgs {
  std::string a, b;
  std::size_t kmax = 20;
  std::size_t max_period = 0;
};

int cmd_sequence(Env& env, const SequenceArgs& args) {
  const Die a = die_arg(args.a, "--a");
  const Die b = die_arg(args.b, "--b");
  if (args.kmax < 1) throw DomainError("--kmax must be at least 1");
  const DominanceSequence seq = dominance_sequence(a, b, args.kmax, env.stop);
  const TrinaryCode code = trinary_code(seq);
  const std::size_t max_period = args.max_period ? args.max_period : std::max<std::size_t>(1, args.kmax / 4);
  const InversionReport inv = analyze_inversion(seq, max_period);

  std::string status;
  switch (inv.status) {
    case InversionStatus::inverted: status = "inverted"; break;
    case InversionStatus::no_inversion: status = "no_inversion"; break;
    case InversionStatus::tie_interrupted: status = "tie_interrupted"; break;
  }

  switch (env.format) {
    case Format::csv: write_sequence_csv(env.out, seq, 1); break;
    case Format::human:
      env.out << "labels          " << seq.to_string() << '\n'
              << "code            " << code.digits << '\n'
              << "code_value      " << to_string(code.value) << '\n'
              << "inversion       " << status;
      if (inv.rolls) env.out << " at " << *inv.rolls;
      env.out << '\n' << "suffix_period   " << (inv.suffix_period ? std::to_string(*inv.suffix_period) : "-") << '\n';
      break;
    case Format::json: {
      Json doc{{"command", "sequence"},
               {"a", to_string(a)},
               {"b", to_string(b)},
               {"kmax", args.kmax},
               {"labels", seq.to_string()},
               {"code", code.digits},
               {"code_value", to_string(code.value)},
               {"inversion", status}};
      doc["inversion_rolls"] = inv.rolls ? Json(*inv.rolls) : Json(nullptr);
      doc["prefix"] = inv.prefix ? Json(std::string(1, to_char(*inv.prefix))) : Json(nullptr);
      doc["suffix_period"] = inv.suffix_period ? Json(*inv.suffix_period) : Json(nullptr);
      emit(env, doc);
      break;
    }
  }
  return kOk;
}

// ---- tilt / span -----------------------------------------------------------

struct TiltArgs {
  std::string die, against, center;
  std::uint64_t rolls = 1;
};

int cmd_tilt(Env& env, const TiltArgs& args) {
  reject_csv(env, "tilt");
  if (args.rolls < 1) throw DomainError("--rolls must be at least 1");
  Die die = die_arg(args.die, "--die");
  if (!args.against.empty()) die = difference_die(die, die_arg(args.against, "--b"));
  const LatticeDie lattice = to_lattice(die);
  const LatticeDistribution dist = power(lattice.dist, args.rolls, ConvolutionKernel::automatic, env.stop);
  const Rational center_face =
      args.center.empty() ? mean(die) * static_cast<unsigned long>(args.rolls) : parse_rational(args.center);
  const TiltCounts counts = tilt_counts(dist, center_face * lattice.scale);
  const Rational tilt = counts.tilt();

  if (env.format == Format::human) {
    env.out << "die       " << to_string(die) << '\n'
            << "rolls     " << args.rolls << '\n'
            << "center    " << to_string(center_face) << '\n'
            << "above     " << to_string(counts.above) << '\n'
            << "equal     " << to_string(counts.equal) << '\n'
            << "below     " << to_string(counts.below) << '\n'
            << "total     " << to_string(counts.total()) << '\n'
            << "tilt      " << to_string(tilt) << "  " << truncated_decimal(tilt, 12) << '\n'
            << "relation  " << to_char(counts.relation()) << '\n';
  } else {
    emit(env, Json{{"command", "tilt"},
                   {"die", to_string(die)},
                   {"rolls", args.rolls},
                   {"center", to_string(center_face)},
                   {"above", to_string(counts.above)},
                   {"equal", to_string(counts.equal)},
                   {"below", to_string(counts.below)},
                   {"total", to_string(counts.total())},
                   {"tilt", to_string(tilt)},
                   {"relation", std::string(1, to_char(counts.relation()))}});
  }
  return kOk;
}

int cmd_span(Env& env, const std::string& die_text) {
  reject_csv(env, "span");
  const Die die = die_arg(die_text, "--die");
  const LatticeDie lattice = to_lattice(die);
  const SpanShift ss = span_shift(lattice.dist);
  Rational span_face(BigInt(ss.span), lattice.scale);
  span_face.canonicalize();
  Rational shift_face(BigInt(ss.shift), lattice.scale);
  shift_face.canonicalize();

  if (env.format == Format::human) {
    env.out << "die          " << to_string(die) << '\n'
            << "scale        " << to_string(lattice.scale) << '\n'
            << "span         " << ss.span << '\n'
            << "shift        " << ss.shift << '\n'
            << "span_faces   " << to_string(span_face) << '\n'
            << "shift_faces  " << to_string(shift_face) << '\n';
  } else {
    emit(env, Json{{"command", "span"},
                   {"die", to_string(die)},
                   {"scale", to_string(lattice.scale)},
                   {"span", ss.span},
                   {"shift", ss.shift},
                   {"span_faces", to_string(span_face)},
                   {"shift_faces", to_string(shift_face)}});
  }
  return kOk;
}

// ---- edgeworth -------------------------------------------------------------

struct EdgeworthArgs {
  std::string die, a, b, c_norm;
  int digits = 6;
  bool no_threshold = false;
  std::uint64_t radius_factor = 20;
};

int cmd_edgeworth(Env& env, const EdgeworthArgs& args) {
  reject_csv(env, "edgeworth");
  if (args.digits < 0 || args.digits > 60) throw DomainError("--digits must be between 0 and 60");
  if (args.radius_factor < 1) throw DomainError("--radius-factor must be at least 1");
  Die die = Die({Rational(0)});
  if (!args.die.empty()) {
    if (!args.a.empty() || !args.b.empty()) throw DomainError("use either --die or --a/--b");
    die = die_arg(args.die, "--die");
  } else if (!args.a.empty() && !args.b.empty()) {
    die = difference_die(die_arg(args.a, "--a"), die_arg(args.b, "--b"));
  } else {
    throw DomainError("edgeworth needs --die or both --a and --b");
  }
  const LatticeDie lattice = to_lattice(die);
  if (lattice.scale != 1) throw DomainError("edgeworth needs integer faces (scale the die first)");

  EdgeworthOptions options;
  if (!args.c_norm.empty()) options.c_norm = parse_rational(args.c_norm);
  const EdgeworthParams p = compute_params(lattice.dist, options);
  const int d = args.digits;

  // name, exact value (or empty), decimal
  std::vector<std::tuple<std::string, std::string, std::string>> rows;
  auto exact = [&](const std::string& name, const Rational& q) { rows.emplace_back(name, to_string(q), truncated_decimal(q, d)); };
  auto real = [&](const std::string& name, const Interval& v) { rows.emplace_back(name, "", decimal(v, d)); };
  rows.emplace_back("a", std::to_string(p.shift), std::to_string(p.shift));
  rows.emplace_back("b", std::to_string(p.span), std::to_string(p.span));
  exact("m", p.m_min);
  exact("C", p.c_norm);
  exact("mu1", p.mu1);
  exact("mu2", p.mu2);
  exact("mu3", p.mu3);
  exact("mu4", p.mu4);
  real("sigma", p.sigma);
  real("nu3", p.nu3);
  exact("nu4", p.mu4 / (p.mu2 * p.mu2));
  real("beta", p.beta);
  real("p0", p.p0);
  real("p1", p.p1);
  real("q1", p.q1);
  real("q2", p.q2);
  real("q3", p.q3);
  real("q4", p.q4);
  real("q5", p.q5);
  real("r", p.r);
  real("n_min", p.n_min);
  real("leading_coefficient", leading_coefficient(p));
  const ExpandedBound e = expanded_bound(p);
  real("bound_inv_n", e.inv_n);
  real("bound_exp_coefficient", e.exp_coefficient);
  real("bound_exp_rate", e.exp_rate);
  real("bound_inv_n_three_half", e.inv_n_three_half);
  real("bound_sqrt_rate", e.sqrt_rate);
  real("bound_tail_inv_sqrt", e.tail_inv_sqrt);
  real("bound_tail_inv_n", e.tail_inv_n);
  real("bound_tail_quarter", e.tail_quarter);
  real("bound_inner_inv_sqrt", e.inner_inv_sqrt);
  real("bound_inner_constant", e.inner_constant);

  std::optional<ThresholdCertificate> cert;
  std::string threshold_error;
  if (!args.no_threshold) {
    try {
      ThresholdOptions topts;
      topts.radius_factor = args.radius_factor;
      cert = certified_threshold(p, topts);
    } catch (const DomainError& ex) {
      threshold_error = ex.what();
    }
  }

  if (env.format == Format::human) {
    for (const auto& [name, ex, dec] : rows) {
      env.out << name << std::string(name.size() < 24 ? 24 - name.size() : 1, ' ') << (ex.empty() ? "-" : ex)
              << "  " << dec << '\n';
    }
    env.out << "validity_floor          " << p.validity_floor() << '\n';
    if (cert) {
      env.out << "threshold               " << cert->threshold << '\n'
              << "check_radius            " << cert->check_radius << '\n'
              << "tilt_sign               " << cert->tilt_sign << '\n'
              << "tail_monotone           " << (cert->tail_monotone ? "true" : "false") << '\n';
    } else if (!args.no_threshold) {
      env.out << "threshold               unavailable: " << threshold_error << '\n';
    }
  } else {
    Json params = Json::object();
    for (const auto& [name, ex, dec] : rows) {
      Json entry{{"decimal", dec}};
      if (!ex.empty()) entry["exact"] = ex;
      params[name] = entry;
    }
    Json doc{{"command", "edgeworth"}, {"die", to_string(die)}, {"digits", d}, {"params", params},
             {"validity_floor", p.validity_floor()}};
    if (cert) {
      doc["threshold"] = Json{{"n", cert->threshold},
                              {"check_radius", cert->check_radius},
                              {"tilt_sign", cert->tilt_sign},
                              {"tail_monotone", cert->tail_monotone}};
    } else {
      doc["threshold"] = nullptr;
      if (!args.no_threshold) doc["threshold_error"] = threshold_error;
    }
    emit(env, doc);
  }
  return kOk;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string a, b, rolls, expect_default = "L", checkpoint, kernel = "automatic";
  std::uint64_t max_k = 0;
  std::vector<std::uint64_t> win_at, loss_at, tie_at;
  std::uint64_t checkpoint_every = 0;
  bool resume = false;
  bool progress = false;
};

ConvolutionKernel parse_kernel(const std::string& text) {
  if (text == "automatic") return ConvolutionKernel::automatic;
  if (text == "schoolbook") return ConvolutionKernel::schoolbook;
  if (text == "kronecker") return ConvolutionKernel::kronecker;
  throw DomainError("unknown kernel '" + text + "'");
}

Relation parse_relation_word(const std::string& text) {
  if (text == "L" || text == "loss") return Relation::loss;
  if (text == "T" || text == "tie") return Relation::tie;
  if (text == "W" || text == "win") return Relation::win;
  throw DomainError("unknown relation '" + text + "' (expected L, T or W)");
}

int cmd_verify(Env& env, const VerifyArgs& args) {
  reject_csv(env, "verify");
  const Die a = die_arg(args.a, "--a");
  const Die b = die_arg(args.b, "--b");
  if (!args.rolls.empty() && args.max_k) throw DomainError("use either --rolls or --max-k");
  if (args.rolls.empty() && !args.max_k) throw DomainError("verify needs --rolls or --max-k");
  const RollRange range = args.rolls.empty() ? RollRange{1, args.max_k} : parse_roll_range(args.rolls);
  if (args.resume && args.checkpoint.empty()) throw DomainError("--resume needs --checkpoint");

  const Relation fallback = parse_relation_word(args.expect_default);
  std::map<std::uint64_t, Relation> exceptions;
  auto add = [&](const std::vector<std::uint64_t>& ks, Relation r) {
    for (std::uint64_t k : ks) {
      if (k == 0) throw DomainError("expectation roll counts start at 1");
      if (!exceptions.emplace(k, r).second) throw DomainError("roll " + std::to_string(k) + " has two expectations");
    }
  };
  add(args.win_at, Relation::win);
  add(args.loss_at, Relation::loss);
  add(args.tie_at, Relation::tie);

  std::string tag = std::string("default=") + to_char(fallback);
  for (const auto& [k, r] : exceptions) tag += ";" + std::to_string(k) + "=" + to_char(r);
  Expectation expected = [fallback, exceptions](std::uint64_t k) {
    const auto it = exceptions.find(k);
    return it == exceptions.end() ? fallback : it->second;
  };

  VerifyOptions options;
  options.expectation_tag = tag;
  options.kernel = parse_kernel(args.kernel);
  options.stop = env.stop;
  options.resume = args.resume;
  options.checkpoint_every = args.checkpoint_every;
  if (!args.checkpoint.empty()) {
    options.checkpoint = std::filesystem::path(args.checkpoint);
    options.jobs = 1;
  } else {
    options.jobs = env.jobs;
  }
  if (args.progress) {
    options.progress = [&env](std::uint64_t k) {
      if (k % 1000 == 0) env.err << "verified through " << k << '\n' << std::flush;
    };
  }

  const VerifyReport report = exhaustive_verify(a, b, range, expected, options);

  if (env.format == Format::human) {
    env.out << "range             " << to_string(report.range) << '\n'
            << "expectation       " << tag << '\n'
            << "verified_through  " << report.verified_through << '\n';
    if (report.resumed_from) env.out << "resumed_from      " << report.resumed_from << '\n';
    env.out << report.mismatches.size() << " mismatches";
    for (std::size_t i = 0; i < report.mismatches.size(); ++i) env.out << (i ? ", " : ": ") << report.mismatches[i];
    env.out << '\n';
  } else {
    emit(env, Json{{"command", "verify"},
                   {"a", to_string(a)},
                   {"b", to_string(b)},
                   {"range", to_string(report.range)},
                   {"expectation", tag},
                   {"verified_through", report.verified_through},
                   {"resumed_from", report.resumed_from},
                   {"completed", report.completed},
                   {"mismatches", report.mismatches}});
  }
  if (!report.completed) {
    env.err << "interrupted after roll " << report.verified_through;
    if (options.checkpoint) env.err << "; rerun with --resume to continue";
    env.err << '\n';
    return kDomainError;
  }
  return report.mismatches.empty() ? kOk : kMismatch;
}

// ---- map3 / map4 -----------------------------------------------------------

struct MapArgs {
  std::uint32_t resolution = 200;
  std::size_t kmax = 20;
  std::string domain = "fundamental";
  std::string x_min = "-1/2", x_max = "0";
  bool include_endpoints = false;
  std::size_t depth = 0;
  std::size_t slice_k = 0;
  std::string out;
  bool assert_audit = false;
};

Json record_json(const OutcomeRecord& rec) {
  Json j{{"x", to_string(rec.x)}};
  if (rec.y) j["y"] = to_string(*rec.y);
  j["labels"] = rec.labels.to_string();
  j["code"] = rec.code;
  return j;
}

int cmd_map(Env& env, const MapArgs& args, bool three) {
  GridSpec spec;
  spec.resolution = args.resolution;
  spec.kmax = args.kmax;
  if (three) {
    spec.domain = Domain::three_sided;
    spec.x_min = parse_rational(args.x_min);
    spec.x_max = parse_rational(args.x_max);
    spec.include_endpoints = args.include_endpoints;
  } else {
    spec.domain = parse_domain(args.domain);
    if (spec.domain == Domain::three_sided) throw DomainError("map4 needs --domain fundamental or full");
  }
  spec.validate();
  if ((args.depth || args.slice_k) && args.out.empty()) throw DomainError("PGM output needs --out");
  const std::size_t depth = args.depth ? args.depth : spec.kmax;
  if (depth > spec.kmax) throw DomainError("--depth must not exceed --kmax");
  if (args.slice_k > spec.kmax) throw DomainError("--slice-k must not exceed --kmax");

  SweepOptions sweep;
  sweep.jobs = env.jobs;
  sweep.stop = env.stop;
  const std::vector<OutcomeRecord> records = three ? sweep3(spec, sweep) : sweep4(spec, sweep);

  std::vector<std::string> written;
  if (!args.out.empty()) {
    const std::string csv_path = args.out + ".csv";
    write_csv(records, std::filesystem::path(csv_path));
    written.push_back(csv_path);
    const std::string pgm_path = args.out + ".pgm";
    write_pgm(records, spec, std::filesystem::path(pgm_path), depth);
    written.push_back(pgm_path);
    if (args.slice_k) {
      const std::string slice_path = args.out + "-k" + std::to_string(args.slice_k) + ".pgm";
      write_pgm_slice(records, spec, std::filesystem::path(slice_path), args.slice_k);
      written.push_back(slice_path);
    }
  }

  std::size_t with_tie = 0;
  std::size_t all_tie = 0;
  std::map<std::string, std::size_t> codes;
  for (const OutcomeRecord& rec : records) {
    const auto labels = rec.labels.labels();
    const auto ties = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), Relation::tie));
    with_tie += ties > 0;
    all_tie += ties == labels.size();
    ++codes[rec.code];
  }
  std::optional<ThreeSidedAudit> audit;
  if (three) audit = audit_three_sided(records);

  switch (env.format) {
    case Format::csv: write_csv(records, env.out); break;
    case Format::human:
      env.out << "domain             " << to_string(spec.domain) << '\n'
              << "resolution         " << spec.resolution << '\n'
              << "kmax               " << spec.kmax << '\n'
              << "points             " << records.size() << '\n'
              << "points_with_tie    " << with_tie << '\n'
              << "all_tie_points     " << all_tie << '\n'
              << "distinct_codes     " << codes.size() << '\n';
      if (audit) {
        env.out << "audit_ties         ";
        if (audit->ties.empty()) env.out << "none";
        for (std::size_t i = 0; i < audit->ties.size(); ++i) env.out << (i ? " " : "") << to_string(audit->ties[i]);
        env.out << "\naudit_mod3         ";
        if (audit->non_loss_at_multiple_of_three.empty()) env.out << "none";
        for (std::size_t i = 0; i < audit->non_loss_at_multiple_of_three.size(); ++i) {
          const auto& [x, k] = audit->non_loss_at_multiple_of_three[i];
          env.out << (i ? " " : "") << to_string(x) << "@" << k;
        }
        env.out << '\n';
      }
      for (const std::string& path : written) env.out << "wrote              " << path << '\n';
      break;
    case Format::json: {
      Json doc{{"command", three ? "map3" : "map4"},
               {"domain", to_string(spec.domain)},
               {"resolution", spec.resolution},
               {"kmax", spec.kmax},
               {"points", records.size()},
               {"points_with_tie", with_tie},
               {"all_tie_points", all_tie},
               {"distinct_codes", codes.size()}};
      if (audit) {
        Json ties = Json::array();
        for (const Rational& x : audit->ties) ties.push_back(to_string(x));
        Json mod3 = Json::array();
        for (const auto& [x, k] : audit->non_loss_at_multiple_of_three) mod3.push_back(Json{{"x", to_string(x)}, {"k", k}});
        doc["audit"] = Json{{"ties", ties}, {"non_loss_at_multiple_of_three", mod3}};
      }
      doc["files"] = written;
      Json recs = Json::array();
      for (const OutcomeRecord& rec : records) recs.push_back(record_json(rec));
      doc["records"] = std::move(recs);
      emit(env, doc);
      break;
    }
  }
  if (audit && !audit->clean()) {
    env.err << "three-sided audit: " << audit->ties.size() << " tie record(s), "
            << audit->non_loss_at_multiple_of_three.size() << " non-loss at a multiple of three\n";
    if (args.assert_audit) return kMismatch;
  }
  return kOk;
}

// ---- family ----------------------------------------------------------------

struct FamilyArgs {
  std::string x_min = "10", x_max = "200", x_step = "2";
  std::uint64_t kmax = 200;
  bool fit = false;
  bool assert_monotone = false;
};

std::string outcome_word(FamilyOutcome o) {
  switch (o) {
    case FamilyOutcome::inverted: return "inverted";
    case FamilyOutcome::no_inversion: return "no_inversion";
    case FamilyOutcome::no_winning_start: return "no_winning_start";
    case FamilyOutcome::tie_interrupted: return "tie_interrupted";
  }
  return "?";
}

int cmd_family(Env& env, const FamilyArgs& args) {
  const std::vector<Rational> xs =
      family_grid(parse_rational(args.x_min), parse_rational(args.x_max), parse_rational(args.x_step));
  if (args.kmax < 1) throw DomainError("--kmax must be at least 1");
  FamilyScanOptions options;
  options.jobs = env.jobs;
  options.stop = env.stop;
  const std::vector<FamilyPoint> points = first_inversion_scan(xs, args.kmax, options);

  // Monotonicity over the points that satisfy the span/third-moment hypothesis.
  bool monotone = true;
  std::optional<std::uint64_t> previous;
  std::vector<std::pair<Rational, Rational>> fit_points;
  std::vector<std::string> flagged;
  for (const FamilyPoint& p : points) {
    if (!p.hypothesis_holds) flagged.push_back(to_string(p.x));
    if (!p.hypothesis_holds || !p.first_inversion) continue;
    if (previous && *p.first_inversion < *previous) monotone = false;
    previous = p.first_inversion;
    fit_points.emplace_back(p.x, Rational(BigInt(static_cast<unsigned long>(*p.first_inversion))));
  }
  std::optional<QuadraticFit> fit;
  std::string fit_error;
  if (args.fit) {
    try {
      fit = quadratic_fit(fit_points);
    } catch (const DomainError& e) {
      fit_error = e.what();
    }
  }
  auto fit_lines = [&](std::ostream& os) {
    if (!args.fit) return;
    if (!fit) {
      os << "fit.error     " << fit_error << '\n';
      return;
    }
    os << "fit.points    " << fit_points.size() << '\n'
       << "fit.c2        " << truncated_decimal(fit->c2, 9) << '\n'
       << "fit.c1        " << truncated_decimal(fit->c1, 9) << '\n'
       << "fit.c0        " << truncated_decimal(fit->c0, 9) << '\n'
       << "fit.residual  " << fit->residual << '\n';
  };

  switch (env.format) {
    case Format::csv:
      env.out << "x,first_inversion,kmax_searched\n";
      for (const FamilyPoint& p : points) {
        env.out << to_string(p.x) << ',' << (p.first_inversion ? std::to_string(*p.first_inversion) : "") << ','
                << p.kmax_searched << '\n';
      }
      fit_lines(env.err);
      break;
    case Format::human:
      env.out << "x        first_inversion  outcome           span  mu3  hypothesis\n";
      for (const FamilyPoint& p : points) {
        std::string x = to_string(p.x);
        std::string k = p.first_inversion ? std::to_string(*p.first_inversion) : (p.tie_at ? "tie@" + std::to_string(*p.tie_at) : "-");
        std::string outcome = outcome_word(p.outcome);
        std::string span = to_string(p.span);
        x.resize(std::max<std::size_t>(x.size(), 9), ' ');
        k.resize(std::max<std::size_t>(k.size(), 17), ' ');
        outcome.resize(std::max<std::size_t>(outcome.size(), 18), ' ');
        span.resize(std::max<std::size_t>(span.size(), 6), ' ');
        const char* sign = p.third_moment_sign > 0 ? "+  " : (p.third_moment_sign < 0 ? "-  " : "0  ");
        env.out << x << k << outcome << span << sign << "  " << (p.hypothesis_holds ? "yes" : "no") << '\n';
      }
      env.out << "monotone      " << (monotone ? "true" : "false") << '\n';
      fit_lines(env.out);
      break;
    case Format::json: {
      Json arr = Json::array();
      for (const FamilyPoint& p : points) {
        Json j{{"x", to_string(p.x)}};
        j["first_inversion"] = p.first_inversion ? Json(*p.first_inversion) : Json(nullptr);
        j["kmax_searched"] = p.kmax_searched;
        j["outcome"] = outcome_word(p.outcome);
        j["tie_at"] = p.tie_at ? Json(*p.tie_at) : Json(nullptr);
        j["span"] = to_string(p.span);
        j["third_moment_sign"] = p.third_moment_sign;
        j["hypothesis_holds"] = p.hypothesis_holds;
        arr.push_back(std::move(j));
      }
      Json doc{{"command", "family"}, {"kmax", args.kmax}, {"points", arr}, {"monotone", monotone},
               {"hypothesis_violations", flagged}};
      if (args.fit) {
        if (fit) {
          doc["fit"] = Json{{"points", fit_points.size()},
                            {"c2", to_string(fit->c2)},
                            {"c1", to_string(fit->c1)},
                            {"c0", to_string(fit->c0)},
                            {"residual", fit->residual}};
        } else {
          doc["fit"] = Json{{"error", fit_error}};
        }
      }
      emit(env, doc);
      break;
    }
  }
  if (args.assert_monotone && !monotone) {
    env.err << "inversion times are not nondecreasing in x\n";
    return kMismatch;
  }
  return kOk;
}

// ---- cycle -----------------------------------------------------------------

int cmd_cycle(Env& env, const std::vector<std::string>& dice_text, std::uint64_t rolls) {
  reject_csv(env, "cycle");
  if (rolls < 1) throw DomainError("--rolls must be at least 1");
  std::vector<Die> dice;
  for (const std::string& t : dice_text) dice.push_back(die_arg(t, "--die"));
  const bool cycle = is_intransitive_cycle(dice, rolls);
  std::vector<Relation> pairs;
  for (std::size_t i = 0; i < dice.size(); ++i) pairs.push_back(compare(dice[i], dice[(i + 1) % dice.size()], rolls));

  if (env.format == Format::human) {
    for (std::size_t i = 0; i < dice.size(); ++i) {
      env.out << "{" << to_string(dice[i]) << "} vs {" << to_string(dice[(i + 1) % dice.size()]) << "}  "
              << relation_word(pairs[i]) << '\n';
    }
    env.out << "intransitive  " << (cycle ? "true" : "false") << '\n';
  } else {
    Json arr = Json::array();
    for (std::size_t i = 0; i < dice.size(); ++i) {
      arr.push_back(Json{{"first", i}, {"second", (i + 1) % dice.size()}, {"relation", std::string(1, to_char(pairs[i]))}});
    }
    Json names = Json::array();
    for (const Die& d : dice) names.push_back(to_string(d));
    emit(env, Json{{"command", "cycle"}, {"rolls", rolls}, {"dice", names}, {"pairs", arr}, {"intransitive", cycle}});
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::stop_token stop) {
  CLI::App app{"Exact dominance of dice under repeated summed rolls", "antidice"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "human";
  unsigned jobs = default_jobs();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"human", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--jobs", jobs, "Worker threads (default from ANTIDICE_JOBS)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::function<int(Env&)> action;

  CompareArgs compare_args;
  auto* compare = app.add_subcommand("compare", "Relation of A against B over a roll range");
  compare->add_option("--a", compare_args.a, "First die")->required();
  compare->add_option("--b", compare_args.b, "Second die")->required();
  compare->add_option("--rolls", compare_args.rolls, "Roll count or range a..b")->capture_default_str();
  compare->callback([&] { action = [&](Env& e) { return cmd_compare(e, compare_args); }; });

  SequenceArgs sequence_args;
  auto* sequence = app.add_subcommand("sequence", "Outcome sequence, trinary code and inversion analysis");
  sequence->add_option("--a", sequence_args.a, "First die")->required();
  sequence->add_option("--b", sequence_args.b, "Second die")->required();
  sequence->add_option("--kmax", sequence_args.kmax, "Largest roll count")->capture_default_str();
  sequence->add_option("--max-period", sequence_args.max_period, "Largest suffix period to test (default kmax/4)");
  sequence->callback([&] { action = [&](Env& e) { return cmd_sequence(e, sequence_args); }; });

  TiltArgs tilt_args;
  auto* tilt = app.add_subcommand("tilt", "Exact tilt counts of a die summed over k rolls");
  tilt->add_option("--die", tilt_args.die, "Die")->required();
  tilt->add_option("--b", tilt_args.against, "Subtract this die first (difference die)");
  tilt->add_option("--rolls", tilt_args.rolls, "Roll count")->capture_default_str();
  tilt->add_option("--center", tilt_args.center, "Center (default: mean of the k-roll sum)");
  tilt->callback([&] { action = [&](Env& e) { return cmd_tilt(e, tilt_args); }; });

  std::string span_die;
  auto* span = app.add_subcommand("span", "Lattice span and shift of a die");
  span->add_option("--die", span_die, "Die")->required();
  span->callback([&] { action = [&](Env& e) { return cmd_span(e, span_die); }; });

  EdgeworthArgs edgeworth_args;
  auto* edgeworth = app.add_subcommand("edgeworth", "Edgeworth constants, error bound and certified threshold");
  edgeworth->add_option("--die", edgeworth_args.die, "Balanced difference die");
  edgeworth->add_option("--a", edgeworth_args.a, "First die (difference die is a - b)");
  edgeworth->add_option("--b", edgeworth_args.b, "Second die");
  edgeworth->add_option("--digits", edgeworth_args.digits, "Decimal digits (truncated)")->capture_default_str();
  edgeworth->add_option("--c-norm", edgeworth_args.c_norm, "Override C (default 2b)");
  edgeworth->add_option("--radius-factor", edgeworth_args.radius_factor, "Check radius as a multiple of the threshold")
      ->capture_default_str();
  edgeworth->add_flag("--no-threshold", edgeworth_args.no_threshold, "Skip the threshold search");
  edgeworth->callback([&] { action = [&](Env& e) { return cmd_edgeworth(e, edgeworth_args); }; });

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Exhaustive exact check of an expected relation pattern");
  verify->add_option("--a", verify_args.a, "First die")->required();
  verify->add_option("--b", verify_args.b, "Second die")->required();
  verify->add_option("--rolls", verify_args.rolls, "Roll range a..b");
  verify->add_option("--max-k", verify_args.max_k, "Shorthand for --rolls 1..N");
  verify->add_option("--expect-default", verify_args.expect_default, "Expected relation elsewhere (L, T or W)")
      ->capture_default_str();
  verify->add_option("--expect-win-at", verify_args.win_at, "Roll counts expected to win")->delimiter(',');
  verify->add_option("--expect-loss-at", verify_args.loss_at, "Roll counts expected to lose")->delimiter(',');
  verify->add_option("--expect-tie-at", verify_args.tie_at, "Roll counts expected to tie")->delimiter(',');
  verify->add_option("--checkpoint", verify_args.checkpoint, "Checkpoint file (forces one job)");
  verify->add_flag("--resume", verify_args.resume, "Continue from the checkpoint");
  verify->add_option("--checkpoint-every", verify_args.checkpoint_every, "Also checkpoint every N rolls");
  verify->add_option("--kernel", verify_args.kernel, "automatic, schoolbook or kronecker")->capture_default_str();
  verify->add_flag("--progress", verify_args.progress, "Report progress every 1000 rolls");
  verify->callback([&] { action = [&](Env& e) { return cmd_verify(e, verify_args); }; });

  MapArgs map3_args;
  map3_args.domain = "three";
  auto* map3 = app.add_subcommand("map3", "Sweep {1, x, -1-x} against {0}");
  map3->add_option("--resolution", map3_args.resolution, "Grid denominator")->capture_default_str();
  map3->add_option("--kmax", map3_args.kmax, "Rolls per point")->capture_default_str();
  map3->add_option("--x-min", map3_args.x_min, "Lower x (exclusive unless endpoints)")->capture_default_str();
  map3->add_option("--x-max", map3_args.x_max, "Upper x")->capture_default_str();
  map3->add_flag("--include-endpoints", map3_args.include_endpoints, "Include x-min and x-max");
  map3->add_option("--depth", map3_args.depth, "Code digits shading the PGM (default kmax)");
  map3->add_option("--slice-k", map3_args.slice_k, "Also write a PGM of the relation after k rolls");
  map3->add_option("--out", map3_args.out, "Write <out>.csv and <out>.pgm");
  map3->add_flag("--assert-audit", map3_args.assert_audit, "Exit 2 on a tie or a non-loss at a multiple of 3");
  map3->callback([&] { action = [&](Env& e) { return cmd_map(e, map3_args, true); }; });

  MapArgs map4_args;
  auto* map4 = app.add_subcommand("map4", "Sweep {1, x, y, -1-x-y} against {0}");
  map4->add_option("--resolution", map4_args.resolution, "Grid denominator")->capture_default_str();
  map4->add_option("--kmax", map4_args.kmax, "Rolls per point")->capture_default_str();
  map4->add_option("--domain", map4_args.domain, "fundamental or full")->capture_default_str();
  map4->add_option("--depth", map4_args.depth, "Code digits shading the PGM (default kmax)");
  map4->add_option("--slice-k", map4_args.slice_k, "Also write a PGM of the relation after k rolls");
  map4->add_option("--out", map4_args.out, "Write <out>.csv and <out>.pgm");
  map4->callback([&] { action = [&](Env& e) { return cmd_map(e, map4_args, false); }; });

  FamilyArgs family_args;
  auto* family = app.add_subcommand("family", "First inversions of {x, 5, 3, -9, 1-x} against {0}");
  family->add_option("--x-min", family_args.x_min, "Smallest x")->capture_default_str();
  family->add_option("--x-max", family_args.x_max, "Largest x")->capture_default_str();
  family->add_option("--x-step", family_args.x_step, "Grid step")->capture_default_str();
  family->add_option("--kmax", family_args.kmax, "Largest roll count searched")->capture_default_str();
  family->add_flag("--fit", family_args.fit, "Least-squares quadratic in x");
  family->add_flag("--assert-monotone", family_args.assert_monotone, "Exit 2 unless inversion times are nondecreasing");
  family->callback([&] { action = [&](Env& e) { return cmd_family(e, family_args); }; });

  std::vector<std::string> cycle_dice;
  std::uint64_t cycle_rolls = 1;
  auto* cycle = app.add_subcommand("cycle", "Is each die beaten by the previous one, cyclically?");
  cycle->add_option("--die", cycle_dice, "Die (repeat, at least three)")->required();
  cycle->add_option("--rolls", cycle_rolls, "Roll count")->capture_default_str();
  cycle->callback([&] { action = [&](Env& e) { return cmd_cycle(e, cycle_dice, cycle_rolls); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }

  Env env{out, err, stop};
  env.format = format == "json" ? Format::json : (format == "csv" ? Format::csv : Format::human);
  env.jobs = jobs;
  try {
    return action(env);
  } catch (const Cancelled&) {
    err << "interrupted\n";
    return kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
}

}  // namespace antidice::cli
