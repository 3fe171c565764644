#include "antidice/interval.hpp"

#include <array>
#include <memory>
#include <stdexcept>
#include <utility>

#include "antidice/errors.hpp"

namespace antidice {

namespace {

// RAII scratch value for the four-corner products.
struct Scratch {
  mpfr_t v;
  Scratch() { mpfr_init2(v, Interval::kPrecision); }
  ~Scratch() { mpfr_clear(v); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
};

using Op = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

// Lower = min over corners rounded down, upper = max over corners rounded up.
void corners(mpfr_ptr lo, mpfr_ptr hi, mpfr_srcptr alo, mpfr_srcptr ahi, mpfr_srcptr blo,
             mpfr_srcptr bhi, Op op) {
  const std::array<std::pair<mpfr_srcptr, mpfr_srcptr>, 4> pairs{
      {{alo, blo}, {alo, bhi}, {ahi, blo}, {ahi, bhi}}};
  Scratch down, up;
  bool first = true;
  for (const auto& [x, y] : pairs) {
    op(down.v, x, y, MPFR_RNDD);
    op(up.v, x, y, MPFR_RNDU);
    if (first || mpfr_less_p(down.v, lo)) mpfr_set(lo, down.v, MPFR_RNDD);
    if (first || mpfr_greater_p(up.v, hi)) mpfr_set(hi, up.v, MPFR_RNDU);
    first = false;
  }
}

}  // namespace

Interval::Interval() {
  mpfr_init2(lo_, kPrecision);
  mpfr_init2(hi_, kPrecision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(long value) : Interval() {
  mpfr_set_si(lo_, value, MPFR_RNDD);
  mpfr_set_si(hi_, value, MPFR_RNDU);
}

Interval::Interval(const Rational& value) : Interval() {
  mpfr_set_q(lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, value.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& other) : Interval() {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval() {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::pi() {
  Interval out;
  mpfr_const_pi(out.lo_, MPFR_RNDD);
  mpfr_const_pi(out.hi_, MPFR_RNDU);
  return out;
}

Interval Interval::e() { return exp(Interval(1L)); }

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval out(a);
  if (mpfr_less_p(b.lo_, out.lo_)) mpfr_set(out.lo_, b.lo_, MPFR_RNDD);
  if (mpfr_greater_p(b.hi_, out.hi_)) mpfr_set(out.hi_, b.hi_, MPFR_RNDU);
  return out;
}

double Interval::lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::midpoint_double() const {
  Scratch m;
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  return mpfr_get_d(m.v, MPFR_RNDN);
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool Interval::positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::negative() const { return mpfr_sgn(hi_) < 0; }
bool Interval::certainly_less(const Interval& other) const { return mpfr_less_p(hi_, other.lo_); }

Interval& Interval::operator+=(const Interval& rhs) {
  mpfr_add(lo_, lo_, rhs.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, rhs.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator-=(const Interval& rhs) {
  Scratch lo;
  mpfr_sub(lo.v, lo_, rhs.hi_, MPFR_RNDD);
  mpfr_sub(hi_, hi_, rhs.lo_, MPFR_RNDU);
  mpfr_set(lo_, lo.v, MPFR_RNDD);
  return *this;
}

Interval& Interval::operator*=(const Interval& rhs) {
  Interval out;
  corners(out.lo_, out.hi_, lo_, hi_, rhs.lo_, rhs.hi_, &mpfr_mul);
  return *this = std::move(out);
}

Interval& Interval::operator/=(const Interval& rhs) {
  if (rhs.contains_zero()) throw DomainError("interval division by an interval containing zero");
  Interval out;
  corners(out.lo_, out.hi_, lo_, hi_, rhs.lo_, rhs.hi_, &mpfr_div);
  return *this = std::move(out);
}

Interval operator-(const Interval& x) {
  Interval out;
  mpfr_neg(out.lo_, x.hi_, MPFR_RNDD);
  mpfr_neg(out.hi_, x.lo_, MPFR_RNDU);
  return out;
}

Interval sqrt(const Interval& x) {
  if (mpfr_sgn(x.lo_) < 0) throw DomainError("square root of an interval reaching below zero");
  Interval out;
  mpfr_sqrt(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_sqrt(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

Interval exp(const Interval& x) {
  Interval out;
  mpfr_exp(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

Interval log(const Interval& x) {
  if (mpfr_sgn(x.lo_) <= 0) throw DomainError("logarithm of a non-positive interval");
  Interval out;
  mpfr_log(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

Interval abs(const Interval& x) {
  if (mpfr_sgn(x.lo_) >= 0) return x;
  if (mpfr_sgn(x.hi_) <= 0) return -x;
  Interval out;
  mpfr_set_zero(out.lo_, 1);
  if (mpfr_cmpabs(x.lo_, x.hi_) > 0) {
    mpfr_abs(out.hi_, x.lo_, MPFR_RNDU);
  } else {
    mpfr_set(out.hi_, x.hi_, MPFR_RNDU);
  }
  return out;
}

Interval max(const Interval& a, const Interval& b) {
  Interval out;
  mpfr_max(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Interval pow(const Interval& x, const Rational& p) {
  if (!x.positive()) throw DomainError("fractional power of a non-positive interval");
  return exp(log(x) * Interval(p));
}

std::string Interval::truncated(int digits) const {
  if (!positive() && !negative()) {
    // Straddles zero: only acceptable if every digit shown is zero.
    Scratch bound;
    mpfr_set_ui(bound.v, 10, MPFR_RNDN);
    mpfr_pow_si(bound.v, bound.v, -digits, MPFR_RNDD);
    if (mpfr_cmpabs(lo_, bound.v) >= 0 || mpfr_cmpabs(hi_, bound.v) >= 0) {
      throw std::runtime_error("interval too wide to truncate");
    }
    return truncated_decimal(Rational(0), digits);
  }
  if (negative()) {
    const std::string mag = (-*this).truncated(digits);
    return "-" + mag;
  }
  Scratch scale, s_lo, s_hi;
  mpfr_set_ui(scale.v, 10, MPFR_RNDN);
  mpfr_pow_ui(scale.v, scale.v, static_cast<unsigned long>(digits), MPFR_RNDN);  // exact
  mpfr_mul(s_lo.v, lo_, scale.v, MPFR_RNDD);
  mpfr_mul(s_hi.v, hi_, scale.v, MPFR_RNDU);
  BigInt t_lo, t_hi;
  mpfr_get_z(t_lo.get_mpz_t(), s_lo.v, MPFR_RNDD);
  mpfr_get_z(t_hi.get_mpz_t(), s_hi.v, MPFR_RNDD);
  if (t_lo != t_hi) throw std::runtime_error("interval too wide to truncate");
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rational q(t_lo, den);
  q.canonicalize();
  return truncated_decimal(q, digits);
}

std::string Interval::approx(int digits) const {
  Scratch m;
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  std::unique_ptr<char, void (*)(char*)> buf(nullptr, [](char* p) { mpfr_free_str(p); });
  mpfr_exp_t e10 = 0;
  buf.reset(mpfr_get_str(nullptr, &e10, 10, static_cast<std::size_t>(digits), m.v, MPFR_RNDN));
  std::string mant(buf.get());
  std::string sign;
  if (!mant.empty() && mant.front() == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  if (mpfr_zero_p(m.v)) return "0";
  // Fixed notation when the exponent is modest, scientific otherwise.
  if (e10 > 0 && e10 <= static_cast<mpfr_exp_t>(mant.size())) {
    return sign + mant.substr(0, static_cast<std::size_t>(e10)) + "." + mant.substr(static_cast<std::size_t>(e10));
  }
  if (e10 <= 0 && e10 > -8) {
    return sign + "0." + std::string(static_cast<std::size_t>(-e10), '0') + mant;
  }
  return sign + mant.substr(0, 1) + "." + mant.substr(1) + "e" + std::to_string(e10 - 1);
}

}  // namespace antidice
