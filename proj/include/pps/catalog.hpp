#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pps/expression.hpp"

namespace pps {

/// Where a catalog inequality is expected to be tight. Metadata only: the
/// verifier measures the actual equality set and reports what it saw.
enum class EqualityClass { primes, prime_powers, unknown };

inline const char* equality_class_name(EqualityClass c) {
  switch (c) {
    case EqualityClass::primes: return "PRIMES";
    case EqualityClass::prime_powers: return "PRIME_POWERS";
    default: return "UNKNOWN";
  }
}

/// One registered lower bound: lhs >= rhs for all n >= min_n.
struct InequalityDescriptor {
  std::string id;
  std::string statement;
  FormalExpression lhs;
  FormalExpression rhs;
  uint64_t min_n = 2;
  EqualityClass expected_equality_class = EqualityClass::unknown;
};

struct GapValue {
  Int n;
  Int gap;  // lhs - rhs, signed, never clamped
  bool operator==(const GapValue&) const = default;
};

/// The twelve registered inequalities, fixed order and ids.
inline const std::vector<InequalityDescriptor>& registry() {
  static const std::vector<InequalityDescriptor> reg = [] {
    const FormalExpression F = sym(Sym::phi);
    const FormalExpression G = sym(Sym::psi);
    const FormalExpression H = sym(Sym::sigma);
    const FormalExpression FS = sym(Sym::phi_star);
    const FormalExpression HS = sym(Sym::sigma_star);
    const FormalExpression N = sym(Sym::n);

    std::vector<InequalityDescriptor> r;
    r.push_back({"L1", "phi + psi >= 2n",
                 F + G, 2 * N, 2, EqualityClass::prime_powers});
    r.push_back({"L2", "phi + sigma >= 2n",
                 F + H, 2 * N, 2, EqualityClass::primes});
    r.push_back({"A13", "phi*psi*sigma >= n^3 + n^2 - n - 1",
                 F * G * H, N.pow(3) + N.pow(2) - N - 1, 2, EqualityClass::primes});
    r.push_back({"S14a", "phi*psi*sigma >= phi_star * sigma_star^2",
                 F * G * H, FS * HS.pow(2), 1, EqualityClass::unknown});
    r.push_back({"S14b", "phi_star * sigma_star^2 >= n^3 + n^2 - n - 1",
                 FS * HS.pow(2), N.pow(3) + N.pow(2) - N - 1, 1, EqualityClass::prime_powers});
    r.push_back({"D24a", "phi^2 + psi^2 + sigma^2 >= 3n^2 + 2n + 3",
                 F.pow(2) + G.pow(2) + H.pow(2),
                 3 * N.pow(2) + 2 * N + 3, 2, EqualityClass::primes});
    r.push_back({"D24b", "phi*psi + phi*sigma + sigma*psi >= 3n^2 + 2n - 1",
                 F * G + F * H + H * G,
                 3 * N.pow(2) + 2 * N - 1, 2, EqualityClass::primes});
    r.push_back({"T1", "phi^3 + psi^3 + sigma^3 >= 3n^3 + 3n^2 + 9n + 1",
                 F.pow(3) + G.pow(3) + H.pow(3),
                 3 * N.pow(3) + 3 * N.pow(2) + 9 * N + 1, 2, EqualityClass::primes});
    r.push_back({"T2", "phi^4 + psi^4 + sigma^4 >= 3n^4 + 4n^3 + 18n^2 + 4n + 3",
                 F.pow(4) + G.pow(4) + H.pow(4),
                 3 * N.pow(4) + 4 * N.pow(3) + 18 * N.pow(2) + 4 * N + 3, 2,
                 EqualityClass::primes});
    r.push_back({"T3", "phi^2*psi^2 + phi^2*sigma^2 + sigma^2*psi^2 >= 3n^4 + 4n^3 + 2n^2 + 4n + 3",
                 F.pow(2) * G.pow(2) + F.pow(2) * H.pow(2) + H.pow(2) * G.pow(2),
                 3 * N.pow(4) + 4 * N.pow(3) + 2 * N.pow(2) + 4 * N + 3, 2,
                 EqualityClass::primes});
    r.push_back({"T4", "phi^2(psi+sigma) + psi^2(phi+sigma) + sigma^2(phi+psi) >= 6n^3 + 6n^2 + 2n + 2",
                 F.pow(2) * (G + H) + G.pow(2) * (F + H) + H.pow(2) * (F + G),
                 6 * N.pow(3) + 6 * N.pow(2) + 2 * N + 2, 2, EqualityClass::primes});
    r.push_back({"T5", "phi^3(psi+sigma) + psi^3(phi+sigma) + sigma^3(phi+psi) >= 6n^4 + 8n^3 + 12n^2 + 8n - 2",
                 F.pow(3) * (G + H) + G.pow(3) * (F + H) + H.pow(3) * (F + G),
                 6 * N.pow(4) + 8 * N.pow(3) + 12 * N.pow(2) + 8 * N - 2, 2,
                 EqualityClass::primes});
    return r;
  }();
  return reg;
}

inline bool has_descriptor(std::string_view id) {
  for (const auto& d : registry())
    if (d.id == id) return true;
  return false;
}

inline const InequalityDescriptor& descriptor(std::string_view id) {
  for (const auto& d : registry())
    if (d.id == id) return d;
  throw std::invalid_argument("unknown inequality id: " + std::string(id));
}

/// Exact signed lhs - rhs at one bundle. Calling below the inequality's
/// validity threshold is a caller bug, rejected loudly.
inline Int gap(const InequalityDescriptor& d, const FunctionBundle& b) {
  if (b.n < Int(d.min_n))
    throw std::domain_error("gap: n below validity threshold of " + d.id);
  return d.lhs.eval(b) - d.rhs.eval(b);
}

}  // namespace pps
