#pragma once

#include <mpfr.h>

#include <string>

#include "antidice/rational.hpp"

namespace antidice {

/// Closed interval [lower, upper] of MPFR floats with outward rounding: every
/// operation rounds its lower end down and its upper end up, so the true
/// real value is always enclosed.
class Interval {
 public:
  static constexpr mpfr_prec_t kPrecision = 256;

  Interval();
  explicit Interval(long value);
  explicit Interval(const Rational& value);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval pi();
  static Interval e();
  /// Hull of two intervals.
  static Interval hull(const Interval& a, const Interval& b);

  mpfr_srcptr lower() const noexcept { return lo_; }
  mpfr_srcptr upper() const noexcept { return hi_; }
  double lower_double() const;
  double upper_double() const;
  double midpoint_double() const;

  bool contains_zero() const;
  bool positive() const;  ///< lower > 0
  bool negative() const;  ///< upper < 0
  /// Certainly below: upper < other.lower.
  bool certainly_less(const Interval& other) const;

  Interval& operator+=(const Interval& rhs);
  Interval& operator-=(const Interval& rhs);
  Interval& operator*=(const Interval& rhs);
  Interval& operator/=(const Interval& rhs);

  friend Interval operator+(Interval lhs, const Interval& rhs) { return lhs += rhs; }
  friend Interval operator-(Interval lhs, const Interval& rhs) { return lhs -= rhs; }
  friend Interval operator*(Interval lhs, const Interval& rhs) { return lhs *= rhs; }
  friend Interval operator/(Interval lhs, const Interval& rhs) { return lhs /= rhs; }
  friend Interval operator-(const Interval& x);

  friend Interval sqrt(const Interval& x);
  friend Interval exp(const Interval& x);
  friend Interval log(const Interval& x);
  friend Interval abs(const Interval& x);
  friend Interval max(const Interval& a, const Interval& b);
  /// x^p for x > 0.
  friend Interval pow(const Interval& x, const Rational& p);

  /// Decimal truncated toward zero, e.g. "-0.015424". Throws if the interval
  /// is too wide to determine every requested digit.
  std::string truncated(int digits) const;
  /// Midpoint with `digits` significant digits, for display.
  std::string approx(int digits = 20) const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace antidice
