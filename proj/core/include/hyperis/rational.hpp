#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace hyperis {

using BigCount = mpz_class;
using ExactRational = mpq_class;

inline ExactRational make_rational(const BigCount& num, const BigCount& den) {
  ExactRational q(num, den);
  q.canonicalize();
  return q;
}

inline BigCount pow2(std::uint64_t e) {
  BigCount p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, e);
  return p;
}

inline BigCount ipow(const BigCount& base, std::uint64_t e) {
  BigCount p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), e);
  return p;
}

inline ExactRational qpow(const ExactRational& base, std::int64_t e) {
  ExactRational b = base;
  if (e < 0) {
    b = 1 / b;
    e = -e;
  }
  ExactRational out(ipow(b.get_num(), static_cast<std::uint64_t>(e)),
                    ipow(b.get_den(), static_cast<std::uint64_t>(e)));
  out.canonicalize();
  return out;
}

// "p/q", or "p" for integers.
inline std::string to_string(const ExactRational& q) { return q.get_str(); }
inline std::string to_string(const BigCount& z) { return z.get_str(); }

// True iff the denominator is a power of two.
inline bool is_dyadic(const ExactRational& q) {
  const BigCount& d = q.get_den();
  return mpz_popcount(d.get_mpz_t()) == 1;
}

}  // namespace hyperis
