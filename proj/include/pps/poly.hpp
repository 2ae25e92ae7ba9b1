#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pps/wide_int.hpp"

namespace pps {

/// The three variables certificate polynomials may use.
enum class Var : uint8_t { n = 0, p = 1, q = 2 };
inline constexpr std::size_t kVarCount = 3;

inline const char* var_name(Var v) {
  constexpr const char* names[kVarCount] = {"n", "p", "q"};
  return names[static_cast<std::size_t>(v)];
}

using Monomial = std::array<uint16_t, kVarCount>;

/// Sparse multivariate polynomial with exact integer coefficients.
/// Terms are kept in a map keyed by exponent vector: canonical form, so
/// equality is structural. No zero coefficients are ever stored.
class Poly {
 public:
  Poly() = default;

  static Poly constant(Int c) {
    Poly r;
    if (!c.is_zero()) r.terms_[{}] = std::move(c);
    return r;
  }
  static Poly constant(long long c) { return constant(Int(c)); }

  static Poly variable(Var v) {
    Poly r;
    Monomial m{};
    m[static_cast<std::size_t>(v)] = 1;
    r.terms_[m] = Int(1);
    return r;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, Int>& terms() const { return terms_; }

  Int coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Int(0) : it->second;
  }
  Int constant_term() const { return coefficient({}); }

  std::vector<Var> support() const {
    bool used[kVarCount] = {};
    for (const auto& [m, c] : terms_)
      for (std::size_t i = 0; i < kVarCount; ++i)
        if (m[i]) used[i] = true;
    std::vector<Var> vars;
    for (std::size_t i = 0; i < kVarCount; ++i)
      if (used[i]) vars.push_back(static_cast<Var>(i));
    return vars;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }
  Poly operator-() const { return constant(0) - *this; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m;
        for (std::size_t i = 0; i < kVarCount; ++i) m[i] = static_cast<uint16_t>(ma[i] + mb[i]);
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }
  friend Poly operator*(const Int& c, const Poly& a) { return constant(c) * a; }
  friend Poly operator*(long long c, const Poly& a) { return constant(c) * a; }
  friend Poly operator+(const Poly& a, long long c) { return a + constant(c); }
  friend Poly operator-(const Poly& a, long long c) { return a - constant(c); }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  /// Natural-number power; negative exponents are rejected.
  Poly pow(int e) const {
    if (e < 0) throw std::domain_error("Poly::pow: negative exponent");
    Poly r = constant(1);
    Poly b = *this;
    unsigned u = static_cast<unsigned>(e);
    for (;;) {
      if (u & 1u) r = r * b;
      u >>= 1u;
      if (!u) break;
      b = b * b;
    }
    return r;
  }

  /// Exact composition: every occurrence of v becomes `replacement`.
  Poly substitute(Var v, const Poly& replacement) const {
    const std::size_t vi = static_cast<std::size_t>(v);
    uint16_t maxe = 0;
    for (const auto& [m, c] : terms_)
      if (m[vi] > maxe) maxe = m[vi];
    std::vector<Poly> powers(maxe + 1);
    powers[0] = constant(1);
    for (uint16_t e = 1; e <= maxe; ++e) powers[e] = powers[e - 1] * replacement;

    Poly r;
    for (const auto& [m, c] : terms_) {
      Monomial rest = m;
      rest[vi] = 0;
      Poly piece;
      piece.terms_[rest] = c;
      r += piece * powers[m[vi]];
    }
    return r;
  }

  Int eval(const Int& n, const Int& p, const Int& q) const {
    const Int* vals[kVarCount] = {&n, &p, &q};
    Monomial maxe{};
    for (const auto& [m, c] : terms_)
      for (std::size_t i = 0; i < kVarCount; ++i)
        if (m[i] > maxe[i]) maxe[i] = m[i];
    std::array<std::vector<Int>, kVarCount> pw;
    for (std::size_t i = 0; i < kVarCount; ++i) {
      pw[i].resize(maxe[i] + 1);
      pw[i][0] = Int(1);
      for (uint16_t e = 1; e <= maxe[i]; ++e) pw[i][e] = pw[i][e - 1] * *vals[i];
    }
    Int acc{0};
    for (const auto& [m, c] : terms_) {
      Int term = c;
      for (std::size_t i = 0; i < kVarCount; ++i)
        if (m[i]) term *= pw[i][m[i]];
      acc += term;
    }
    return acc;
  }

  bool operator==(const Poly&) const = default;

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      bool neg = c.is_negative();
      if (!out.empty()) out += neg ? " - " : " + ";
      else if (neg) out += "-";
      Int mag = neg ? -c : c;
      std::string vars;
      for (std::size_t i = 0; i < kVarCount; ++i) {
        if (!m[i]) continue;
        if (!vars.empty()) vars += "*";
        vars += var_name(static_cast<Var>(i));
        if (m[i] > 1) vars += "^" + std::to_string(m[i]);
      }
      if (vars.empty()) {
        out += mag.to_decimal();
      } else {
        if (!(mag == Int(1))) out += mag.to_decimal() + "*";
        out += vars;
      }
    }
    return out;
  }

 private:
  void add_term(const Monomial& m, Int c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::map<Monomial, Int> terms_;
};

inline Poly var(Var v) { return Poly::variable(v); }

}  // namespace pps
