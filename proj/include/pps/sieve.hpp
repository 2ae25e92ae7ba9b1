#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pps/arith_functions.hpp"

namespace pps {

/// Default number of values one sieve call may cover.
inline constexpr uint64_t kDefaultSegmentBudget = uint64_t{1} << 20;

/// Upper end of the sieveable range. Keeps sigma(n) and the per-prime-power
/// accumulators far inside u64 and the base-prime sieve allocation small.
inline constexpr uint64_t kMaxSieveValue = 100'000'000'000'000ull;  // 1e14

/// Function values for a contiguous range, row k holding n = lo + k.
struct RangeTable {
  uint64_t lo = 0;
  uint64_t hi = 0;
  std::vector<FunctionBundle> rows;
};

namespace detail {

inline uint64_t isqrt_u64(uint64_t n) {
  if (n == 0) return 0;
  uint64_t r = static_cast<uint64_t>(__builtin_sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline std::vector<uint64_t> primes_upto(uint64_t limit) {
  std::vector<uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<uint8_t> composite(limit + 1, 0);
  for (uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return primes;
}

}  // namespace detail

/// Bulk evaluation over [lo, hi] by a segmented smallest-prime-factor sweep:
/// every base prime p <= sqrt(hi) visits its multiples once, divides p out
/// completely and multiplies the per-function accumulators by the exact
/// prime-power contribution; whatever remains afterwards is a single prime
/// > sqrt(hi). Each row equals bundle(n) bit-exactly.
///
/// Rejects lo = 0 and lo > hi (domain), ranges longer than segment_budget
/// and hi beyond kMaxSieveValue (resource).
inline RangeTable sieve_range(uint64_t lo, uint64_t hi,
                              uint64_t segment_budget = kDefaultSegmentBudget) {
  if (lo == 0) throw std::domain_error("sieve_range: lo must be >= 1");
  if (lo > hi) throw std::domain_error("sieve_range: lo must not exceed hi");
  if (hi > kMaxSieveValue) throw std::length_error("sieve_range: hi exceeds supported sieve range");
  const uint64_t len = hi - lo + 1;
  if (len > segment_budget) throw std::length_error("sieve_range: range exceeds segment budget");

  std::vector<uint64_t> rem(len), phi(len, 1), psi(len, 1), sig(len, 1), phs(len, 1), sgs(len, 1);
  std::vector<uint32_t> omega(len, 0);
  for (uint64_t i = 0; i < len; ++i) rem[i] = lo + i;

  for (uint64_t p : detail::primes_upto(detail::isqrt_u64(hi))) {
    uint64_t start = ((lo + p - 1) / p) * p;
    for (uint64_t m = start; m <= hi; m += p) {
      uint64_t i = m - lo;
      uint64_t pk = 1;
      uint32_t a = 0;
      while (rem[i] % p == 0) {
        rem[i] /= p;
        pk *= p;
        ++a;
      }
      uint64_t s = 1;
      for (uint32_t j = 0; j < a; ++j) s = s * p + 1;
      phi[i] *= (pk / p) * (p - 1);
      psi[i] *= (pk / p) * (p + 1);
      sig[i] *= s;
      phs[i] *= pk - 1;
      sgs[i] *= pk + 1;
      omega[i] += a;
    }
  }

  RangeTable table;
  table.lo = lo;
  table.hi = hi;
  table.rows.reserve(len);
  for (uint64_t i = 0; i < len; ++i) {
    uint64_t r = rem[i];
    if (r > 1) {  // leftover prime factor above sqrt(hi), exponent 1
      phi[i] *= r - 1;
      psi[i] *= r + 1;
      sig[i] *= r + 1;
      phs[i] *= r - 1;
      sgs[i] *= r + 1;
      omega[i] += 1;
    }
    FunctionBundle b;
    b.n = Int(lo + i);
    b.phi = Int(phi[i]);
    b.psi = Int(psi[i]);
    b.sigma = Int(sig[i]);
    b.phi_star = Int(phs[i]);
    b.sigma_star = Int(sgs[i]);
    b.big_omega = omega[i];
    table.rows.push_back(std::move(b));
  }
  return table;
}

}  // namespace pps
