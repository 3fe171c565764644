#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace antidice {

using BigInt = mpz_class;

// GMP keeps mpq_class canonical: lowest terms, positive denominator.
using Rational = mpq_class;

/// Parses an optionally signed integer or fraction "p/q".
/// Surrounding whitespace is ignored; throws DomainError otherwise.
Rational parse_rational(std::string_view token);

/// num/den in lowest terms; throws DomainError when den == 0.
Rational ratio(long num, long den);

std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

BigInt lcm(const BigInt& a, const BigInt& b);

/// Throws DomainError when z is outside the int64 range.
std::int64_t to_int64(const BigInt& z);

/// Truncates q toward zero to `digits` decimal places ("-0.015424").
std::string truncated_decimal(const Rational& q, int digits);

double to_double(const Rational& q);

std::string_view trim(std::string_view s);

}  // namespace antidice
