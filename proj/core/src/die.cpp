#include "antidice/die.hpp"

#include <algorithm>

#include "antidice/errors.hpp"

namespace antidice {

Die::Die(std::vector<Rational> faces) : faces_(std::move(faces)) {
  if (faces_.empty()) throw DomainError("a die needs at least one face");
}

std::vector<Rational> Die::sorted_faces() const {
  std::vector<Rational> out = faces_;
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const Die& lhs, const Die& rhs) {
  return lhs.sides() == rhs.sides() && lhs.sorted_faces() == rhs.sorted_faces();
}

Die parse_die(std::string_view text) {
  std::vector<Rational> faces;
  if (trim(text).empty()) throw DomainError("empty die");
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view token =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (trim(token).empty()) throw DomainError("empty face in '" + std::string(text) + "'");
    faces.push_back(parse_rational(token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Die(std::move(faces));
}

std::string to_string(const Die& die) {
  std::string out;
  for (const Rational& f : die.faces()) {
    if (!out.empty()) out += ',';
    out += to_string(f);
  }
  return out;
}

Die difference_die(const Die& a, const Die& b) {
  std::vector<Rational> faces;
  faces.reserve(a.sides() * b.sides());
  for (const Rational& x : a.faces()) {
    for (const Rational& y : b.faces()) faces.emplace_back(x - y);
  }
  return Die(std::move(faces));
}

Die negate(const Die& die) {
  std::vector<Rational> faces;
  faces.reserve(die.sides());
  for (const Rational& f : die.faces()) faces.emplace_back(-f);
  return Die(std::move(faces));
}

Die shift(const Die& die, const Rational& c) {
  std::vector<Rational> faces;
  faces.reserve(die.sides());
  for (const Rational& f : die.faces()) faces.emplace_back(f + c);
  return Die(std::move(faces));
}

Die scale(const Die& die, const Rational& c) {
  if (c == 0) throw DomainError("cannot scale a die by zero");
  std::vector<Rational> faces;
  faces.reserve(die.sides());
  for (const Rational& f : die.faces()) faces.emplace_back(f * c);
  return Die(std::move(faces));
}

Rational mean(const Die& die) { return raw_moment(die, 1); }

Rational raw_moment(const Die& die, unsigned k) {
  if (k == 0) throw DomainError("moment order must be at least 1");
  Rational sum = 0;
  for (const Rational& f : die.faces()) {
    Rational p = 1;
    for (unsigned i = 0; i < k; ++i) p *= f;
    sum += p;
  }
  return sum / Rational(static_cast<unsigned long>(die.sides()));
}

}  // namespace antidice
