#include "hyperis/closed_forms.hpp"

#include <string>

#include "hyperis/errors.hpp"

namespace hyperis {

ExactRational gamma_k(std::uint32_t k) {
  if (k < 2) throw InputError("gamma_k needs k >= 2, got " + std::to_string(k));
  const BigCount top = pow2(k - 1);
  return make_rational(top, top - 1);
}

AlphaKt alpha_kt(std::uint32_t k, std::uint32_t t) {
  if (t < 1) throw InputError("alpha_{k,t} needs t >= 1");
  const ExactRational gamma = gamma_k(k);
  const Real log_gamma = Real::log_of(gamma, MPFR_RNDN);
  const Real half(ExactRational(1, 2), MPFR_RNDN);

  Real two_t(static_cast<long>(2 * t));
  Real first = Real::div(Real::log2(Real(gamma, MPFR_RNDN), MPFR_RNDN), Real::exp(two_t, MPFR_RNDN), MPFR_RNDN);

  Real one_minus_log2 = Real::sub(Real(1), Real::log(Real(2), MPFR_RNDN), MPFR_RNDN);
  Real numerator = Real::mul(Real::mul(Real(static_cast<long>(k - 1)), one_minus_log2, MPFR_RNDN), log_gamma,
                             MPFR_RNDN);
  Real denominator = Real::add(Real::log_of(ExactRational(pow2(k - 1) - 1), MPFR_RNDN), log_gamma, MPFR_RNDN);
  Real second = Real::div(numerator, denominator, MPFR_RNDN);

  first = Real::mul(half, first, MPFR_RNDN);
  second = Real::mul(half, second, MPFR_RNDN);
  Real value = Real::min(first, second);
  return AlphaKt{std::move(value), std::move(first), std::move(second)};
}

long double closed_form_log_value(std::uint32_t k, std::uint64_t n, const ExactRational& exponent) {
  Real acc = Real::log(Real(static_cast<long>(k)), MPFR_RNDN);
  Real bits(ExactRational(BigCount(static_cast<unsigned long>(k - 1)) * BigCount(static_cast<unsigned long>(n))),
            MPFR_RNDN);
  acc = Real::add(acc, Real::mul(bits, Real::log(Real(2), MPFR_RNDN), MPFR_RNDN), MPFR_RNDN);
  acc = Real::add(acc, Real(exponent, MPFR_RNDN), MPFR_RNDN);
  return acc.to_long_double();
}

namespace {

void check_params(std::uint32_t k, std::uint64_t n, std::uint32_t r) {
  if (k < 3) throw InputError("closed forms need k >= 3");
  if (n < 1 || r < 1) throw InputError("closed forms need n >= 1 and r >= 1");
}

ClosedFormEstimate make_estimate(std::uint32_t k, std::uint64_t n, std::uint32_t r, std::uint32_t t,
                                 ExactRational exponent) {
  ClosedFormEstimate est{k, n, r, t, std::move(exponent), 0.0L};
  est.log_value = closed_form_log_value(k, n, est.exponent);
  return est;
}

ExactRational big(std::uint64_t x) { return ExactRational(BigCount(static_cast<unsigned long>(x))); }

}  // namespace

ClosedFormEstimate closed_form_t1(std::uint32_t k, std::uint64_t n, std::uint32_t r) {
  check_params(k, n, r);
  return make_estimate(k, n, r, 1, big(n) * qpow(gamma_k(k), -static_cast<std::int64_t>(r)));
}

ClosedFormT2 closed_form_t2(std::uint32_t k, std::uint64_t n, std::uint32_t r) {
  check_params(k, n, r);
  const ExactRational gamma = gamma_k(k);
  const ExactRational nn = big(n);
  const ExactRational kk = big(k - 1);
  const ExactRational rr = big(r);
  const ExactRational g_r = qpow(gamma, -static_cast<std::int64_t>(r));
  const ExactRational g_2r = qpow(gamma, -2 * static_cast<std::int64_t>(r));
  const BigCount quarter_top = pow2(k - 2);
  const ExactRational c = make_rational(quarter_top - 1, quarter_top);
  const ExactRational half(1, 2);

  ClosedFormT2 out;
  out.size_one = nn * g_r;

  // Printed exponent, term for term.
  ExactRational bracket = (rr - 1) / rr * gamma * gamma * (1 + c * c) - 2;
  ExactRational printed = out.size_one + kk / 4 * rr * rr * nn * g_2r * bracket;
  printed.canonicalize();

  out.pairs_printed = -half * nn * kk * rr * rr * g_2r;
  out.pairs_corrected = -half * nn * (kk * rr * (rr - 1) + 1) * g_2r;
  out.two_vertex_polymers = half * nn * kk * rr * (rr - 1) * qpow(gamma, -(2 * static_cast<std::int64_t>(r) - 2)) *
                            (half + half * c * c);
  ExactRational corrected = out.size_one + out.pairs_corrected + out.two_vertex_polymers;
  corrected.canonicalize();

  out.delta = corrected - printed;
  out.delta.canonicalize();
  out.printed = make_estimate(k, n, r, 2, printed);
  out.corrected = make_estimate(k, n, r, 2, corrected);
  return out;
}

}  // namespace hyperis
