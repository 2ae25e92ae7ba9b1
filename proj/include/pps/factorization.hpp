#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "pps/primality.hpp"
#include "pps/wide_int.hpp"

namespace pps {

struct PrimePower {
  Int prime;
  uint32_t exponent = 0;
  bool operator==(const PrimePower&) const = default;
};

/// Canonical prime-power decomposition: primes strictly increasing,
/// exponents >= 1, empty list exactly for n = 1.
struct Factorization {
  Int n{1};
  std::vector<PrimePower> factors;
  /// False when a factor beyond 64 bits was certified prime only by
  /// strong-probable-prime testing.
  bool primality_proven = true;
};

namespace detail {

// Brent's cycle variant of Pollard rho. n must be an odd composite with no
// factor below the trial-division bound.
inline uint64_t pollard_rho_u64(uint64_t n) {
  for (uint64_t c = 1;; ++c) {
    auto f = [n, c](uint64_t x) { return (mulmod_u64(x, x, n) + c) % n; };
    uint64_t y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
    const uint64_t batch = 128;
    do {
      x = y;
      for (uint64_t i = 0; i < r; ++i) y = f(y);
      uint64_t k = 0;
      do {
        ys = y;
        uint64_t lim = std::min(batch, r - k);
        for (uint64_t i = 0; i < lim; ++i) {
          y = f(y);
          q = mulmod_u64(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += batch;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_u64_rec(uint64_t n, std::vector<uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  uint64_t d = pollard_rho_u64(n);
  factor_u64_rec(d, out);
  factor_u64_rec(n / d, out);
}

inline mpz_class pollard_rho_mpz(const mpz_class& n) {
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1, diff;
    do {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      diff = x > y ? mpz_class(x - y) : mpz_class(y - x);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (d == 1);
    if (d != n) return d;
  }
}

inline void factor_mpz_rec(const mpz_class& n, std::vector<mpz_class>& out, bool& proven) {
  if (n == 1) return;
  int pr = mpz_probab_prime_p(n.get_mpz_t(), kSprpRounds);
  if (pr != 0) {
    if (pr == 1) proven = false;
    out.push_back(n);
    return;
  }
  mpz_class d = pollard_rho_mpz(n);
  factor_mpz_rec(d, out, proven);
  factor_mpz_rec(mpz_class(n / d), out, proven);
}

inline constexpr uint64_t kTrialBound = 10000;

}  // namespace detail

/// Factors any positive integer. Trial division for the small part, then
/// deterministic Miller-Rabin plus Pollard-Brent rho within 64 bits; beyond
/// that, strong-probable-prime testing (flagged on the result) and a rho
/// variant on GMP integers. Rejects n = 0 and negatives.
inline Factorization factorize(const Int& n) {
  if (n.sign() <= 0) throw std::domain_error("factorize: argument must be a positive integer");
  Factorization result;
  result.n = n;
  if (n == Int(1)) return result;

  std::vector<Int> primes;
  auto strip_u64 = [&primes](uint64_t m) {
    while (m % 2 == 0) {
      primes.push_back(Int(2));
      m /= 2;
    }
    for (uint64_t d = 3; d <= detail::kTrialBound && d * d <= m; d += 2) {
      while (m % d == 0) {
        primes.push_back(Int(d));
        m /= d;
      }
    }
    std::vector<uint64_t> rest;
    detail::factor_u64_rec(m, rest);
    for (uint64_t p : rest) primes.push_back(Int(p));
  };

  if (n.fits_uint64()) {
    strip_u64(n.as_uint64());
  } else {
    mpz_class m = n.to_mpz();
    for (uint64_t d = 2; d <= detail::kTrialBound; d = d == 2 ? 3 : d + 2) {
      while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
        primes.push_back(Int(d));
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
      }
    }
    if (mpz_fits_ulong_p(m.get_mpz_t())) {
      strip_u64(mpz_get_ui(m.get_mpz_t()));
    } else {
      std::vector<mpz_class> rest;
      detail::factor_mpz_rec(m, rest, result.primality_proven);
      for (const mpz_class& p : rest) primes.push_back(Int(p));
    }
  }

  std::sort(primes.begin(), primes.end());
  for (const Int& p : primes) {
    if (!result.factors.empty() && result.factors.back().prime == p) {
      ++result.factors.back().exponent;
    } else {
      result.factors.push_back({p, 1});
    }
  }
  return result;
}

/// Total number of prime factors counted with multiplicity; 0 for n = 1.
inline uint64_t big_omega(const Factorization& f) {
  uint64_t total = 0;
  for (const auto& pp : f.factors) total += pp.exponent;
  return total;
}

}  // namespace pps
