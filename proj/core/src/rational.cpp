#include "antidice/rational.hpp"

#include <cctype>

#include "antidice/errors.hpp"

namespace antidice {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Rational parse_rational(std::string_view token) {
  std::string_view t = trim(token);
  const std::string original(t);
  bool negative = false;
  if (!t.empty() && (t.front() == '-' || t.front() == '+')) {
    negative = t.front() == '-';
    t.remove_prefix(1);
  }
  std::string_view num = t;
  std::string_view den = "1";
  if (auto slash = t.find('/'); slash != std::string_view::npos) {
    num = t.substr(0, slash);
    den = t.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den)) {
    throw DomainError("malformed number '" + original + "'");
  }
  BigInt n(std::string(num), 10);
  BigInt d(std::string(den), 10);
  if (d == 0) throw DomainError("zero denominator in '" + original + "'");
  Rational q(negative ? BigInt(-n) : n, d);
  q.canonicalize();
  return q;
}

Rational ratio(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::string to_string(const BigInt& z) { return z.get_str(10); }

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

std::int64_t to_int64(const BigInt& z) {
  static_assert(sizeof(long) == sizeof(std::int64_t));
  if (!mpz_fits_slong_p(z.get_mpz_t())) {
    throw DomainError("value " + z.get_str() + " exceeds 64-bit lattice range");
  }
  return z.get_si();
}

std::string truncated_decimal(const Rational& q, int digits) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  BigInt scaled_num = q.get_num() * scale;
  BigInt t;
  mpz_tdiv_q(t.get_mpz_t(), scaled_num.get_mpz_t(), q.get_den().get_mpz_t());
  const bool negative = q < 0;
  BigInt mag = abs(t);
  std::string s = mag.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) {
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    }
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  return negative ? "-" + s : s;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace antidice
