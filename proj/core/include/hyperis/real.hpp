#pragma once

#include <mpfr.h>

#include <string>

#include "hyperis/rational.hpp"

namespace hyperis {

// Multiple-precision float with explicit rounding direction on every
// operation. Used where a one-sided inequality must be decided rigorously.
class Real {
 public:
  static constexpr mpfr_prec_t kDefaultPrecision = 256;

  Real();
  // Zero at the given precision.
  static Real zero(mpfr_prec_t precision);
  Real(long value, mpfr_prec_t precision = kDefaultPrecision);
  Real(const ExactRational& q, mpfr_rnd_t rnd, mpfr_prec_t precision = kDefaultPrecision);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(value_, MPFR_RNDN); }
  // Scientific notation with `digits` significant digits.
  std::string to_string(int digits = 12) const;

  static Real add(const Real& a, const Real& b, mpfr_rnd_t rnd);
  static Real sub(const Real& a, const Real& b, mpfr_rnd_t rnd);
  static Real mul(const Real& a, const Real& b, mpfr_rnd_t rnd);
  static Real div(const Real& a, const Real& b, mpfr_rnd_t rnd);
  static Real log(const Real& a, mpfr_rnd_t rnd);
  static Real exp(const Real& a, mpfr_rnd_t rnd);
  static Real log2(const Real& a, mpfr_rnd_t rnd);
  static Real min(const Real& a, const Real& b);
  static Real e(mpfr_rnd_t rnd, mpfr_prec_t precision = kDefaultPrecision);
  static Real log_of(const ExactRational& q, mpfr_rnd_t rnd, mpfr_prec_t precision = kDefaultPrecision);

  int compare(const Real& other) const { return mpfr_cmp(value_, other.value_); }
  bool operator<(const Real& o) const { return compare(o) < 0; }
  bool operator<=(const Real& o) const { return compare(o) <= 0; }
  bool operator>(const Real& o) const { return compare(o) > 0; }
  bool operator>=(const Real& o) const { return compare(o) >= 0; }
  // Exact comparison against a rational.
  int compare(const ExactRational& q) const { return mpfr_cmp_q(value_, q.get_mpq_t()); }

 private:
  mpfr_t value_;
};

// Natural logarithm of a nonnegative quantity too large for a double.
struct LogNumber {
  // -inf represents zero.
  long double log_value = 0.0L;

  static LogNumber zero();
  static LogNumber from_count(const BigCount& z);
  bool is_zero() const;
  // log(a + b) via log-sum-exp.
  friend LogNumber operator+(const LogNumber& a, const LogNumber& b);
  friend LogNumber operator*(const LogNumber& a, const LogNumber& b) { return {a.log_value + b.log_value}; }
};

// Natural log of a positive integer, accurate for values far beyond double range.
long double log_of_count(const BigCount& z);

}  // namespace hyperis
