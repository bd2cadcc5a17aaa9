#include "hyperis/real.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "hyperis/errors.hpp"

namespace hyperis {

Real::Real() {
  mpfr_init2(value_, kDefaultPrecision);
  mpfr_set_zero(value_, 1);
}

Real Real::zero(mpfr_prec_t precision) {
  Real out;
  mpfr_set_prec(out.value_, precision);
  mpfr_set_zero(out.value_, 1);
  return out;
}

Real::Real(long value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(const ExactRational& q, mpfr_rnd_t rnd, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_q(value_, q.get_mpq_t(), rnd);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

std::string Real::to_string(int digits) const {
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Rg", digits, value_);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

Real Real::add(const Real& a, const Real& b, mpfr_rnd_t rnd) {
  Real out = zero(std::max(a.precision(), b.precision()));
  mpfr_add(out.value_, a.value_, b.value_, rnd);
  return out;
}

Real Real::sub(const Real& a, const Real& b, mpfr_rnd_t rnd) {
  Real out = zero(std::max(a.precision(), b.precision()));
  mpfr_sub(out.value_, a.value_, b.value_, rnd);
  return out;
}

Real Real::mul(const Real& a, const Real& b, mpfr_rnd_t rnd) {
  Real out = zero(std::max(a.precision(), b.precision()));
  mpfr_mul(out.value_, a.value_, b.value_, rnd);
  return out;
}

Real Real::div(const Real& a, const Real& b, mpfr_rnd_t rnd) {
  Real out = zero(std::max(a.precision(), b.precision()));
  mpfr_div(out.value_, a.value_, b.value_, rnd);
  return out;
}

Real Real::log(const Real& a, mpfr_rnd_t rnd) {
  Real out = zero(a.precision());
  mpfr_log(out.value_, a.value_, rnd);
  return out;
}

Real Real::exp(const Real& a, mpfr_rnd_t rnd) {
  Real out = zero(a.precision());
  mpfr_exp(out.value_, a.value_, rnd);
  return out;
}

Real Real::log2(const Real& a, mpfr_rnd_t rnd) {
  Real out = zero(a.precision());
  mpfr_log2(out.value_, a.value_, rnd);
  return out;
}

Real Real::min(const Real& a, const Real& b) { return a <= b ? a : b; }

Real Real::e(mpfr_rnd_t rnd, mpfr_prec_t precision) {
  Real one(1, precision);
  return exp(one, rnd);
}

Real Real::log_of(const ExactRational& q, mpfr_rnd_t rnd, mpfr_prec_t precision) {
  if (q <= 0) throw InputError("logarithm of a nonpositive value");
  // log is increasing, so rounding the argument the same way keeps the bound.
  return log(Real(q, rnd, precision), rnd);
}

LogNumber LogNumber::zero() { return {-std::numeric_limits<long double>::infinity()}; }

bool LogNumber::is_zero() const { return std::isinf(log_value) && log_value < 0; }

LogNumber LogNumber::from_count(const BigCount& z) {
  if (z < 0) throw InputError("LogNumber holds nonnegative values only");
  if (z == 0) return zero();
  return {log_of_count(z)};
}

LogNumber operator+(const LogNumber& a, const LogNumber& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const long double hi = std::max(a.log_value, b.log_value);
  const long double lo = std::min(a.log_value, b.log_value);
  return {hi + std::log1p(std::exp(lo - hi))};
}

long double log_of_count(const BigCount& z) {
  if (z <= 0) throw InputError("log of a nonpositive count");
  Real r = Real::zero(256);
  mpfr_set_z(r.get(), z.get_mpz_t(), MPFR_RNDN);
  return Real::log(r, MPFR_RNDN).to_long_double();
}

}  // namespace hyperis
