#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "antidice/rational.hpp"

namespace antidice {

/// A finite multiset of exact rational faces, each rolled with equal
/// probability. Face order is irrelevant: equality is multiset equality.
class Die {
 public:
  /// Throws DomainError for an empty face list.
  explicit Die(std::vector<Rational> faces);

  std::span<const Rational> faces() const noexcept { return faces_; }
  std::size_t sides() const noexcept { return faces_.size(); }
  std::vector<Rational> sorted_faces() const;

  friend bool operator==(const Die& lhs, const Die& rhs);

 private:
  std::vector<Rational> faces_;
};

/// Comma-separated integers or fractions, e.g. "1,1,4,4,5,6" or "1/2,-1/2".
Die parse_die(std::string_view text);
std::string to_string(const Die& die);

/// All m_a * m_b differences a_i - b_j.
Die difference_die(const Die& a, const Die& b);

Die negate(const Die& die);
Die shift(const Die& die, const Rational& c);
/// Throws DomainError when c == 0.
Die scale(const Die& die, const Rational& c);

Rational mean(const Die& die);
/// (1/m) * sum of f^k; k >= 1.
Rational raw_moment(const Die& die, unsigned k);

}  // namespace antidice
