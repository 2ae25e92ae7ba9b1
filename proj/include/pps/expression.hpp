#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pps/arith_functions.hpp"
#include "pps/wide_int.hpp"

namespace pps {

/// Symbols a catalog expression may mention. `n` maps to the bundle's n.
enum class Sym : uint8_t { phi = 0, psi, sigma, phi_star, sigma_star, n };
inline constexpr std::size_t kSymCount = 6;

inline const char* sym_name(Sym s) {
  constexpr const char* names[kSymCount] = {"phi", "psi", "sigma", "phi_star", "sigma_star", "n"};
  return names[static_cast<std::size_t>(s)];
}

struct ExprTerm {
  long long coeff = 0;
  std::array<uint8_t, kSymCount> exps{};
  bool operator==(const ExprTerm&) const = default;
};

/// Integer-coefficient polynomial in the bundle symbols, kept canonical
/// (terms sorted by exponent vector, none zero).
class FormalExpression {
 public:
  FormalExpression() = default;

  static FormalExpression constant(long long c) {
    FormalExpression e;
    if (c != 0) e.terms_.push_back({c, {}});
    return e;
  }

  static FormalExpression symbol(Sym s) {
    FormalExpression e;
    ExprTerm t{1, {}};
    t.exps[static_cast<std::size_t>(s)] = 1;
    e.terms_.push_back(t);
    return e;
  }

  const std::vector<ExprTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend FormalExpression operator+(const FormalExpression& a, const FormalExpression& b) {
    std::map<std::array<uint8_t, kSymCount>, long long> acc;
    for (const auto& t : a.terms_) acc[t.exps] += t.coeff;
    for (const auto& t : b.terms_) acc[t.exps] += t.coeff;
    return from_map(acc);
  }
  friend FormalExpression operator-(const FormalExpression& a, const FormalExpression& b) {
    std::map<std::array<uint8_t, kSymCount>, long long> acc;
    for (const auto& t : a.terms_) acc[t.exps] += t.coeff;
    for (const auto& t : b.terms_) acc[t.exps] -= t.coeff;
    return from_map(acc);
  }
  friend FormalExpression operator*(const FormalExpression& a, const FormalExpression& b) {
    std::map<std::array<uint8_t, kSymCount>, long long> acc;
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        std::array<uint8_t, kSymCount> e = ta.exps;
        for (std::size_t i = 0; i < kSymCount; ++i) e[i] += tb.exps[i];
        acc[e] += ta.coeff * tb.coeff;
      }
    }
    return from_map(acc);
  }
  friend FormalExpression operator*(long long c, const FormalExpression& a) {
    return constant(c) * a;
  }
  friend FormalExpression operator+(const FormalExpression& a, long long c) {
    return a + constant(c);
  }
  friend FormalExpression operator-(const FormalExpression& a, long long c) {
    return a - constant(c);
  }

  FormalExpression pow(unsigned e) const {
    FormalExpression r = constant(1);
    FormalExpression b = *this;
    for (;;) {
      if (e & 1u) r = r * b;
      e >>= 1u;
      if (!e) break;
      b = b * b;
    }
    return r;
  }

  bool operator==(const FormalExpression&) const = default;

  /// Exact signed evaluation with each symbol replaced by the bundle field.
  Int eval(const FunctionBundle& b) const {
    const Int* vals[kSymCount] = {&b.phi, &b.psi, &b.sigma, &b.phi_star, &b.sigma_star, &b.n};
    std::array<uint8_t, kSymCount> maxe{};
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < kSymCount; ++i)
        if (t.exps[i] > maxe[i]) maxe[i] = t.exps[i];
    std::array<std::vector<Int>, kSymCount> pw;
    for (std::size_t i = 0; i < kSymCount; ++i) {
      if (maxe[i] == 0) continue;
      pw[i].resize(maxe[i] + 1);
      pw[i][1] = *vals[i];
      for (uint8_t e = 2; e <= maxe[i]; ++e) pw[i][e] = pw[i][e - 1] * *vals[i];
    }
    Int acc{0};
    for (const auto& t : terms_) {
      Int term{t.coeff};
      for (std::size_t i = 0; i < kSymCount; ++i)
        if (t.exps[i]) term *= pw[i][t.exps[i]];
      acc += term;
    }
    return acc;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& t = *it;
      if (!out.empty()) out += t.coeff < 0 ? " - " : " + ";
      else if (t.coeff < 0) out += "-";
      long long mag = t.coeff < 0 ? -t.coeff : t.coeff;
      bool monomial = false;
      std::string vars;
      for (std::size_t i = 0; i < kSymCount; ++i) {
        if (!t.exps[i]) continue;
        monomial = true;
        if (!vars.empty()) vars += "*";
        vars += sym_name(static_cast<Sym>(i));
        if (t.exps[i] > 1) vars += "^" + std::to_string(t.exps[i]);
      }
      if (!monomial) {
        out += std::to_string(mag);
      } else {
        if (mag != 1) out += std::to_string(mag) + "*";
        out += vars;
      }
    }
    return out;
  }

 private:
  static FormalExpression from_map(const std::map<std::array<uint8_t, kSymCount>, long long>& acc) {
    FormalExpression e;
    for (const auto& [exps, c] : acc)
      if (c != 0) e.terms_.push_back({c, exps});
    return e;
  }

  std::vector<ExprTerm> terms_;
};

inline FormalExpression sym(Sym s) { return FormalExpression::symbol(s); }

}  // namespace pps
