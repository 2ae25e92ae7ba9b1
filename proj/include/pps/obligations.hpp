#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pps/certificate.hpp"
#include "pps/poly.hpp"

namespace pps {

enum class ProofCase { c1_prime, c2_pq, c3_psq, step_a, step_b, auxiliary };

inline const char* proof_case_name(ProofCase c) {
  switch (c) {
    case ProofCase::c1_prime: return "C1_PRIME";
    case ProofCase::c2_pq: return "C2_PQ";
    case ProofCase::c3_psq: return "C3_PSQ";
    case ProofCase::step_a: return "STEP_A";
    case ProofCase::step_b: return "STEP_B";
    default: return "AUX";
  }
}

enum class RequiredVerdict { identity_zero, nonnegative, strictly_positive };

inline const char* required_verdict_name(RequiredVerdict r) {
  switch (r) {
    case RequiredVerdict::identity_zero: return "IDENTITY_ZERO";
    case RequiredVerdict::nonnegative: return "NONNEGATIVE";
    default: return "STRICTLY_POSITIVE";
  }
}

/// One algebraic fact a certificate must establish. `expression` is the
/// difference whose sign is claimed on the integer orthant cut out by
/// `lower_bounds`.
struct ProofObligation {
  std::string id;
  std::optional<int> theorem;  // 1..5; absent for the shared auxiliary facts
  ProofCase proof_case = ProofCase::auxiliary;
  Poly expression;
  std::map<Var, int> lower_bounds;
  RequiredVerdict required = RequiredVerdict::strictly_positive;
  std::string note;  // derivation of the expression, for the rendered table
};

/// Degree of each bound's leading term: the exponent d such that the bound
/// scales like p^d under n -> np.
inline int theorem_degree(int t) {
  switch (t) {
    case 1: return 3;
    case 2: return 4;
    case 3: return 4;
    case 4: return 3;
    case 5: return 4;
  }
  throw std::invalid_argument("theorem_degree: theorem must be 1..5");
}

/// Right-hand side of bound t as a polynomial in Var::n.
inline Poly theorem_rhs(int t) {
  const Poly N = var(Var::n);
  switch (t) {
    case 1: return 3 * N.pow(3) + 3 * N.pow(2) + 9 * N + 1;
    case 2: return 3 * N.pow(4) + 4 * N.pow(3) + 18 * N.pow(2) + 4 * N + 3;
    case 3: return 3 * N.pow(4) + 4 * N.pow(3) + 2 * N.pow(2) + 4 * N + 3;
    case 4: return 6 * N.pow(3) + 6 * N.pow(2) + 2 * N + 2;
    case 5: return 6 * N.pow(4) + 8 * N.pow(3) + 12 * N.pow(2) + 8 * N - 2;
  }
  throw std::invalid_argument("theorem_rhs: theorem must be 1..5");
}

/// Left-hand side of bound t as a polynomial in given images of phi, psi,
/// sigma.
inline Poly theorem_lhs(int t, const Poly& f, const Poly& g, const Poly& h) {
  switch (t) {
    case 1: return f.pow(3) + g.pow(3) + h.pow(3);
    case 2: return f.pow(4) + g.pow(4) + h.pow(4);
    case 3: return f.pow(2) * g.pow(2) + f.pow(2) * h.pow(2) + h.pow(2) * g.pow(2);
    case 4: return f.pow(2) * (g + h) + g.pow(2) * (f + h) + h.pow(2) * (f + g);
    case 5: return f.pow(3) * (g + h) + g.pow(3) * (f + h) + h.pow(3) * (f + g);
  }
  throw std::invalid_argument("theorem_lhs: theorem must be 1..5");
}

/// The 30 machine-checked obligations: five per bound (prime base case,
/// two-prime and prime-square cases, the two induction steps) plus five
/// shared auxiliary facts the induction steps lean on.
inline const std::vector<ProofObligation>& obligations() {
  static const std::vector<ProofObligation> all = [] {
    const Poly N = var(Var::n);
    const Poly P = var(Var::p);
    const Poly Q = var(Var::q);
    std::vector<ProofObligation> obs;

    for (int t = 1; t <= 5; ++t) {
      const std::string T = "T" + std::to_string(t);
      const Poly rhs = theorem_rhs(t);
      const Poly rhs_np = rhs.substitute(Var::n, N * P);
      const int d = theorem_degree(t);

      obs.push_back({T + "-C1", t, ProofCase::c1_prime,
                     theorem_lhs(t, N - 1, N + 1, N + 1) - rhs,
                     {{Var::n, 2}},
                     RequiredVerdict::identity_zero,
                     "prime n: phi -> n-1, psi,sigma -> n+1; the bound is an identity"});

      obs.push_back({T + "-C2", t, ProofCase::c2_pq,
                     theorem_lhs(t, (P - 1) * (Q - 1), (P + 1) * (Q + 1), (P + 1) * (Q + 1)) -
                         rhs.substitute(Var::n, P * Q),
                     {{Var::p, 2}, {Var::q, 2}},
                     RequiredVerdict::strictly_positive,
                     "n = pq: certified for all integers p,q >= 2, which subsumes distinct primes"});

      obs.push_back({T + "-C3", t, ProofCase::c3_psq,
                     theorem_lhs(t, P * (P - 1), P * (P + 1), P * P + P + 1) -
                         rhs.substitute(Var::n, P * P),
                     {{Var::p, 2}},
                     RequiredVerdict::strictly_positive,
                     "n = p^2: phi -> p(p-1), psi -> p(p+1), sigma -> p^2+p+1"});

      Poly step_a;
      switch (t) {
        case 1:
          step_a = (P + 1).pow(3) * rhs - (6 * P.pow(2) + 2) * N.pow(3) - rhs_np;
          break;
        case 2:
          step_a = (P + 1).pow(4) * rhs - (8 * P.pow(3) + 8 * P) * N.pow(4) - rhs_np;
          break;
        case 3:
          step_a = (P.pow(2) - 1).pow(2) * rhs + 4 * P * (P + 1).pow(2) * (N + 1).pow(4) - rhs_np;
          break;
        case 4:
          step_a = (P - 1).pow(2) * (P + 1) * rhs +
                   (2 * P.pow(2) + 4 * P + 2) * (2 * (N + 1).pow(3)) +
                   (2 * P.pow(2) - 2) * (4 * N * (N + 1).pow(2)) - rhs_np;
          break;
        case 5:
          step_a = (P - 1).pow(3) * (P + 1) * rhs + (4 * P.pow(3) - 4 * P) * (4 * N * (N + 1).pow(3)) +
                   (2 * P.pow(3) + 6 * P.pow(2) + 6 * P + 2) * (2 * (N + 1).pow(4)) - rhs_np;
          break;
      }
      obs.push_back({T + "-A", t, ProofCase::step_a, step_a,
                     {{Var::n, 2}, {Var::p, 2}},
                     RequiredVerdict::strictly_positive,
                     "induction step, p coprime to n: residual after applying the induction "
                     "hypothesis together with phi(n) < n (T1,T2), psi,sigma >= n+1 (T3), or "
                     "those plus phi+psi >= 2n and phi+sigma >= 2n (T4,T5)"});

      obs.push_back({T + "-B", t, ProofCase::step_b,
                     Poly::constant(1) * P.pow(d) * rhs - rhs_np,
                     {{Var::n, 2}, {Var::p, 2}},
                     RequiredVerdict::strictly_positive,
                     "induction step, p divides n: the values scale by at least p^" +
                         std::to_string(d) + ", so p^" + std::to_string(d) +
                         "*rhs(n) - rhs(np) > 0 closes the step"});
    }

    // Shared auxiliary facts used by the induction steps above. Each is the
    // exact polynomial residual of the fact's own one-line argument.
    obs.push_back({"AX-PHI-UPPER", std::nullopt, ProofCase::auxiliary,
                   N * P - (P - 1) * (N - 1) - 1,
                   {{Var::n, 2}, {Var::p, 2}},
                   RequiredVerdict::strictly_positive,
                   "phi(m) < m: coprime step np - (p-1)*phi(n) >= np - (p-1)(n-1) = (n+p-2) + 1"});
    obs.push_back({"AX-PSI-LOWER", std::nullopt, ProofCase::auxiliary,
                   (P + 1) * (N + 1) - (N * P + 1),
                   {{Var::n, 2}, {Var::p, 2}},
                   RequiredVerdict::strictly_positive,
                   "psi(m) >= m+1: coprime step (p+1)*psi(n) >= (p+1)(n+1) = (np+1) + (n+p)"});
    obs.push_back({"AX-SIGMA-LOWER", std::nullopt, ProofCase::auxiliary,
                   (P + 1) * (N + 1) - (N * P + 1),
                   {{Var::n, 2}, {Var::p, 2}},
                   RequiredVerdict::strictly_positive,
                   "sigma(m) >= m+1: coprime step sigma(np) = sigma(n)*sigma(p) >= (n+1)(p+1)"});
    obs.push_back({"AX-SCALE-EQ", std::nullopt, ProofCase::auxiliary,
                   Poly{},
                   {},
                   RequiredVerdict::identity_zero,
                   "p | n scaling: phi(p^(a+1)) - p*phi(p^a) and psi alike cancel exactly; "
                   "with u = p^(a-1) both sides are p*u*(p-1) resp. p*u*(p+1)"});
    obs.push_back({"AX-SIGMA-SCALE", std::nullopt, ProofCase::auxiliary,
                   Poly::constant(1),
                   {},
                   RequiredVerdict::strictly_positive,
                   "p | n scaling: sigma(p^(a+1)) = p*sigma(p^a) + 1, so sigma(np) exceeds "
                   "p*sigma(n) by sigma(n/p^a) >= 1"});
    return obs;
  }();
  return all;
}

/// Outcome of certifying one obligation.
struct ObligationResult {
  const ProofObligation* obligation = nullptr;
  CertificateVerdict verdict;
  int floor_used = 0;
  bool satisfied = false;
};

inline constexpr int kMaxShiftFloor = 8;

inline ObligationResult certify_obligation(const ProofObligation& ob) {
  ObligationResult r;
  r.obligation = &ob;
  if (ob.required == RequiredVerdict::identity_zero) {
    r.verdict = shift_certificate(ob.expression, ob.lower_bounds);
    r.satisfied = r.verdict.outcome == CertOutcome::identity_confirmed;
    return r;
  }
  const bool strict = ob.required == RequiredVerdict::strictly_positive;
  OrthantCertificate cert =
      certify_integer_orthant(ob.expression, ob.lower_bounds, strict, kMaxShiftFloor);
  r.verdict = cert.verdict;
  r.floor_used = cert.floor_used;
  r.satisfied = cert.verdict.outcome == CertOutcome::proved_strictly_positive ||
                (!strict && cert.verdict.outcome == CertOutcome::proved_nonnegative) ||
                (!strict && cert.verdict.outcome == CertOutcome::identity_confirmed);
  return r;
}

/// Certifies every obligation (optionally one theorem's) in registry order.
inline std::vector<ObligationResult> certify_all(std::optional<int> theorem_filter = {}) {
  std::vector<ObligationResult> results;
  for (const ProofObligation& ob : obligations()) {
    if (theorem_filter && ob.theorem != theorem_filter) continue;
    results.push_back(certify_obligation(ob));
  }
  return results;
}

}  // namespace pps
