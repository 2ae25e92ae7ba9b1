#pragma once

#include <bit>
#include <cstdint>

#include "pps/wide_int.hpp"

namespace pps {

namespace detail {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return uint64_t((unsigned __int128)a * b % m);
}

inline uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic primality test for the whole 64-bit range.
/// Miller-Rabin with the first twelve primes as witnesses, which is a proven
/// deterministic set for n < 3.3 * 10^24.
inline bool is_prime_u64(uint64_t n) {
  constexpr uint64_t witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (uint64_t p : witnesses) {
    if (n % p == 0) return n == p;
  }
  const int s = std::countr_zero(n - 1);
  const uint64_t d = (n - 1) >> s;
  for (uint64_t a : witnesses) {
    uint64_t x = detail::powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = detail::mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Rounds of strong-probable-prime testing applied to inputs beyond 64 bits.
inline constexpr int kSprpRounds = 40;

enum class Primality { composite, prime, probable_prime };

/// Exact for anything that fits 64 bits; beyond that the verdict can be
/// `probable_prime` (error probability < 4^-kSprpRounds), never a false
/// "composite".
inline Primality classify_prime(const Int& n, int rounds = kSprpRounds) {
  if (n.sign() <= 0) return Primality::composite;
  if (n.fits_uint64()) {
    return is_prime_u64(n.as_uint64()) ? Primality::prime : Primality::composite;
  }
  mpz_class z = n.to_mpz();
  int r = mpz_probab_prime_p(z.get_mpz_t(), rounds);
  if (r == 2) return Primality::prime;
  if (r == 1) return Primality::probable_prime;
  return Primality::composite;
}

inline bool is_prime(const Int& n) { return classify_prime(n) != Primality::composite; }

}  // namespace pps
