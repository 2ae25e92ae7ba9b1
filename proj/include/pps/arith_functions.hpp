#pragma once

#include <cstdint>

#include "pps/factorization.hpp"
#include "pps/wide_int.hpp"

namespace pps {

/// The five multiplicative functions the library evaluates.
/// phi_star and sigma_star are the unitary analogues: products of
/// (p^a - 1) and (p^a + 1) over the prime-power components.
enum class Fn { phi, psi, sigma, phi_star, sigma_star };

/// Exact evaluation from a factorization. All five are 1 on the empty
/// factorization (n = 1).
inline Int evaluate(Fn f, const Factorization& fac) {
  Int acc{1};
  for (const auto& [p, a] : fac.factors) {
    switch (f) {
      case Fn::phi:
        acc *= p.pow(a - 1) * (p - Int(1));
        break;
      case Fn::psi:
        acc *= p.pow(a - 1) * (p + Int(1));
        break;
      case Fn::sigma: {
        Int s{1};  // 1 + p + ... + p^a by Horner, no division
        for (uint32_t i = 0; i < a; ++i) s = s * p + Int(1);
        acc *= s;
        break;
      }
      case Fn::phi_star:
        acc *= p.pow(a) - Int(1);
        break;
      case Fn::sigma_star:
        acc *= p.pow(a) + Int(1);
        break;
    }
  }
  return acc;
}

/// The values of all five functions (plus big omega) at one n.
struct FunctionBundle {
  Int n{1};
  Int phi{1};
  Int psi{1};
  Int sigma{1};
  Int phi_star{1};
  Int sigma_star{1};
  uint32_t big_omega = 0;

  bool operator==(const FunctionBundle&) const = default;
};

/// Evaluates everything at n via factorization. Rejects n = 0.
inline FunctionBundle bundle(const Int& n) {
  Factorization f = factorize(n);
  FunctionBundle b;
  b.n = n;
  b.phi = evaluate(Fn::phi, f);
  b.psi = evaluate(Fn::psi, f);
  b.sigma = evaluate(Fn::sigma, f);
  b.phi_star = evaluate(Fn::phi_star, f);
  b.sigma_star = evaluate(Fn::sigma_star, f);
  b.big_omega = static_cast<uint32_t>(big_omega(f));
  return b;
}

}  // namespace pps
