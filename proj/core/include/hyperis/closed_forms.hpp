#pragma once

#include <cstdint>

#include "hyperis/rational.hpp"
#include "hyperis/real.hpp"

namespace hyperis {

// gamma_k = 2^{k-1} / (2^{k-1} - 1). Throws InputError for k < 2.
ExactRational gamma_k(std::uint32_t k);

struct AlphaKt {
  Real value;
  Real first;   // (1/2) log2(gamma_k) / e^{2t}
  Real second;  // (1/2) (k-1)(1 - log 2) log(gamma_k) / (log(2^{k-1}-1) + log(gamma_k))
};

// The expansion threshold alpha_{k,t}: half the smaller of the two branches.
AlphaKt alpha_kt(std::uint32_t k, std::uint32_t t);

struct ClosedFormEstimate {
  std::uint32_t k = 0;
  std::uint64_t n = 0;
  std::uint32_t r = 0;
  std::uint32_t t = 0;
  ExactRational exponent;
  // log k + (k-1) n log 2 + exponent.
  long double log_value = 0.0L;
};

// n gamma_k^{-r}.
ClosedFormEstimate closed_form_t1(std::uint32_t k, std::uint64_t n, std::uint32_t r);

struct ClosedFormT2 {
  ClosedFormEstimate printed;
  // Same formula with the singleton-pair count n((k-1)r(r-1)+1) obtained by
  // enumeration in place of n(k-1)r^2.
  ClosedFormEstimate corrected;
  // corrected - printed = (1/2)((k-1)r - 1) n gamma_k^{-2r}.
  ExactRational delta;
  ExactRational size_one;           // n gamma_k^{-r}
  ExactRational pairs_printed;      // -(1/2) n (k-1) r^2 gamma_k^{-2r}
  ExactRational pairs_corrected;    // -(1/2) n ((k-1) r (r-1) + 1) gamma_k^{-2r}
  ExactRational two_vertex_polymers;  // clusters ({v,u})
};

ClosedFormT2 closed_form_t2(std::uint32_t k, std::uint64_t n, std::uint32_t r);

// log k + (k-1) n log 2 + exponent, in long double.
long double closed_form_log_value(std::uint32_t k, std::uint64_t n, const ExactRational& exponent);

}  // namespace hyperis
