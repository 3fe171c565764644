#include "antidice/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "antidice/errors.hpp"

namespace antidice {

using nlohmann::json;

namespace {

constexpr const char* kCheckpointKind = "antidice-verify-checkpoint";

json distribution_json(const LatticeDistribution& d) {
  json weights = json::array();
  for (const BigInt& w : d.weights()) weights.push_back(w.get_str());
  return json{{"offset", d.offset()},
              {"length", d.size()},
              {"total", d.total().get_str()},
              {"weights", std::move(weights)}};
}

BigInt parse_bigint(const json& j) {
  const std::string s = j.get<std::string>();
  BigInt z;
  if (s.empty() || z.set_str(s, 10) != 0) throw DomainError("malformed integer '" + s + "'");
  return z;
}

LatticeDistribution distribution_from_json(const json& j) {
  const auto offset = j.at("offset").get<std::int64_t>();
  const auto length = j.at("length").get<std::size_t>();
  const json& jw = j.at("weights");
  if (!jw.is_array() || jw.size() != length) throw DomainError("weight count does not match length");
  std::vector<BigInt> weights;
  weights.reserve(length);
  for (const json& w : jw) weights.push_back(parse_bigint(w));
  LatticeDistribution d(offset, std::move(weights));
  if (d.total() != parse_bigint(j.at("total"))) throw DomainError("total does not match weights");
  if (d.offset() != offset || d.size() != length) throw DomainError("distribution is not trimmed");
  return d;
}

}  // namespace

std::string serialize_distribution(const LatticeDistribution& d) { return distribution_json(d).dump(); }

LatticeDistribution parse_distribution(std::string_view json_text) {
  try {
    return distribution_from_json(json::parse(json_text));
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed distribution: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& path, const VerifyCheckpoint& cp) {
  const json j{{"kind", kCheckpointKind},
               {"format_version", kCheckpointFormatVersion},
               {"a", cp.die_a},
               {"b", cp.die_b},
               {"range", {cp.range.first, cp.range.last}},
               {"expectation", cp.expectation},
               {"rolls", cp.rolls},
               {"mismatches", cp.mismatches},
               {"scale", cp.scale.get_str()},
               {"distribution", distribution_json(cp.dist)}};
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write checkpoint " + tmp.string());
    out << j.dump() << '\n';
    if (!out) throw DomainError("failed writing checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::optional<VerifyCheckpoint> load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    const json j = json::parse(buf.str());
    if (j.at("kind").get<std::string>() != kCheckpointKind) throw DomainError("not a verify checkpoint");
    if (j.at("format_version").get<int>() != kCheckpointFormatVersion) {
      throw DomainError("unsupported checkpoint format version");
    }
    VerifyCheckpoint cp;
    cp.die_a = j.at("a").get<std::string>();
    cp.die_b = j.at("b").get<std::string>();
    cp.range = RollRange{j.at("range").at(0).get<std::uint64_t>(), j.at("range").at(1).get<std::uint64_t>()};
    cp.expectation = j.at("expectation").get<std::string>();
    cp.rolls = j.at("rolls").get<std::uint64_t>();
    cp.mismatches = j.at("mismatches").get<std::vector<std::uint64_t>>();
    cp.scale = parse_bigint(j.at("scale"));
    cp.dist = distribution_from_json(j.at("distribution"));
    return cp;
  } catch (const json::exception& e) {
    throw DomainError("corrupt checkpoint " + path.string() + ": " + e.what());
  }
}

}  // namespace antidice
