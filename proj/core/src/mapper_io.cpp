#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "antidice/errors.hpp"
#include "antidice/mapper.hpp"

namespace antidice {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot write " + path.string());
  return out;
}

using PixelShade = std::uint16_t (*)(const OutcomeRecord&, std::size_t);

void write_grid(const std::vector<OutcomeRecord>& records, const GridSpec& spec, std::ostream& out,
                std::size_t param, PixelShade shade) {
  const GridLayout layout = grid_layout(spec);
  std::map<std::pair<Rational, Rational>, const OutcomeRecord*> index;
  for (const OutcomeRecord& rec : records) index[{rec.x, rec.y.value_or(Rational(0))}] = &rec;

  out << "P5\n" << layout.columns.size() << ' ' << layout.rows.size() << "\n65535\n";
  std::string row_bytes;
  row_bytes.reserve(layout.columns.size() * 2);
  for (const auto& y : layout.rows) {
    row_bytes.clear();
    for (const Rational& x : layout.columns) {
      std::uint16_t gray = 65535;
      if (in_spec_domain(spec, x, y)) {
        const auto it = index.find({x, y.value_or(Rational(0))});
        if (it == index.end()) {
          throw DomainError("incomplete grid: no record at x=" + to_string(x) +
                            (y ? ", y=" + to_string(*y) : std::string()));
        }
        gray = shade(*it->second, param);
      }
      row_bytes.push_back(static_cast<char>(gray >> 8));
      row_bytes.push_back(static_cast<char>(gray & 0xff));
    }
    out.write(row_bytes.data(), static_cast<std::streamsize>(row_bytes.size()));
  }
  if (!out) throw DomainError("failed writing PGM output");
}

}  // namespace

std::uint16_t gray_level(std::string_view digits) {
  BigInt value = 0;
  BigInt top = 0;
  for (char c : digits) {
    if (c < '0' || c > '2') throw DomainError("invalid trinary digit");
    value = value * 3 + (c - '0');
    top = top * 3 + 2;
  }
  if (top == 0) throw DomainError("empty trinary prefix");
  const BigInt gray = value * 65535 / top;
  return static_cast<std::uint16_t>(gray.get_ui());
}

void write_csv(const std::vector<OutcomeRecord>& records, std::ostream& out) {
  const bool two_d = !records.empty() && records.front().y.has_value();
  out << (two_d ? "x,y,labels,code\n" : "x,labels,code\n");
  for (const OutcomeRecord& rec : records) {
    if (rec.y.has_value() != two_d) throw DomainError("mixed 1-D and 2-D records");
    out << to_string(rec.x);
    if (two_d) out << ',' << to_string(*rec.y);
    out << ',' << rec.labels.to_string() << ',' << rec.code << '\n';
  }
  if (!out) throw DomainError("failed writing CSV output");
}

void write_csv(const std::vector<OutcomeRecord>& records, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  write_csv(records, out);
}

std::vector<OutcomeRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty CSV");
  bool two_d = false;
  if (line == "x,y,labels,code") {
    two_d = true;
  } else if (line != "x,labels,code") {
    throw DomainError("unexpected CSV header '" + line + "'");
  }
  std::vector<OutcomeRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != (two_d ? 4u : 3u)) throw DomainError("malformed CSV row '" + line + "'");
    std::size_t c = 0;
    OutcomeRecord rec;
    rec.x = parse_rational(cells[c++]);
    if (two_d) rec.y = parse_rational(cells[c++]);
    rec.labels = DominanceSequence::parse(cells[c++]);
    rec.code = cells[c++];
    if (rec.code != trinary_code(rec.labels).digits) throw DomainError("code does not match labels");
    records.push_back(std::move(rec));
  }
  return records;
}

void write_pgm(const std::vector<OutcomeRecord>& records, const GridSpec& spec, std::ostream& out,
               std::size_t depth) {
  if (depth < 1 || depth > spec.kmax) {
    throw DomainError("PGM depth must be between 1 and kmax (" + std::to_string(spec.kmax) + ")");
  }
  write_grid(records, spec, out, depth, [](const OutcomeRecord& rec, std::size_t d) {
    if (rec.code.size() < d) throw DomainError("record shorter than PGM depth");
    return gray_level(std::string_view(rec.code).substr(0, d));
  });
}

void write_pgm(const std::vector<OutcomeRecord>& records, const GridSpec& spec,
               const std::filesystem::path& path, std::size_t depth) {
  std::ofstream out = open_output(path);
  write_pgm(records, spec, out, depth);
}

void write_pgm_slice(const std::vector<OutcomeRecord>& records, const GridSpec& spec, std::ostream& out,
                     std::size_t rolls) {
  if (rolls < 1 || rolls > spec.kmax) {
    throw DomainError("slice roll count must be between 1 and kmax (" + std::to_string(spec.kmax) + ")");
  }
  write_grid(records, spec, out, rolls, [](const OutcomeRecord& rec, std::size_t k) {
    if (rec.code.size() < k) throw DomainError("record shorter than slice roll count");
    return gray_level(std::string_view(rec.code).substr(k - 1, 1));
  });
}

void write_pgm_slice(const std::vector<OutcomeRecord>& records, const GridSpec& spec,
                     const std::filesystem::path& path, std::size_t rolls) {
  std::ofstream out = open_output(path);
  write_pgm_slice(records, spec, out, rolls);
}

}  // namespace antidice
