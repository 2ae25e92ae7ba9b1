#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace pps {

/// Exact signed integer used for every arithmetic value in this library.
///
/// Values live on a __int128 fast path. Any operation whose result would
/// overflow 128 bits promotes to a GMP integer; results that fit again are
/// demoted back. The representation is therefore canonical (a GMP payload is
/// only ever held for values outside the __int128 range) and operator== is
/// plain structural equality. Arithmetic never wraps and never traps.
class Int {
 public:
  using i128 = __int128;
  using u128 = unsigned __int128;

  Int() = default;
  Int(int v) : rep_(i128{v}) {}
  Int(long v) : rep_(i128{v}) {}
  Int(long long v) : rep_(i128{v}) {}
  Int(unsigned v) : rep_(i128{v}) {}
  Int(unsigned long v) : rep_(i128{v}) {}
  Int(unsigned long long v) : rep_(i128{v}) {}
  explicit Int(i128 v) : rep_(v) {}
  explicit Int(const mpz_class& z) { assign(z); }

  /// Parses an optionally signed decimal string of arbitrary length.
  /// Throws std::invalid_argument on anything but [+-]?[0-9]+.
  static Int from_decimal(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
      neg = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) throw std::invalid_argument("Int::from_decimal: empty input");
    u128 mag = 0;
    bool overflow = false;
    for (char c : s) {
      if (c < '0' || c > '9') throw std::invalid_argument("Int::from_decimal: not a decimal integer");
      if (!overflow) {
        unsigned d = unsigned(c - '0');
        if (mag > (~u128{0} - d) / 10) {
          overflow = true;
        } else {
          mag = mag * 10 + d;
        }
      }
    }
    if (!overflow) {
      if (!neg && mag <= u128(kI128Max)) return Int(i128(mag));
      if (neg && mag <= u128(kI128Max) + 1) return Int(i128(u128{0} - mag));
    }
    mpz_class z(std::string(neg ? "-" : "") + std::string(s), 10);
    return Int(z);
  }

  bool small() const { return rep_.index() == 0; }

  int sign() const {
    if (small()) {
      i128 v = sv();
      return v < 0 ? -1 : v > 0 ? 1 : 0;
    }
    return mpz_sgn(bv().get_mpz_t());
  }
  bool is_zero() const { return small() && sv() == 0; }
  bool is_negative() const { return sign() < 0; }

  bool fits_int64() const {
    return small() && sv() >= i128(INT64_MIN) && sv() <= i128(INT64_MAX);
  }
  int64_t as_int64() const { return int64_t(sv()); }
  bool fits_uint64() const { return small() && sv() >= 0 && sv() <= i128(UINT64_MAX); }
  uint64_t as_uint64() const { return uint64_t(sv()); }

  /// Low 64 bits of the two's-complement representation, i.e. the value
  /// reduced mod 2^64 into [0, 2^64). Consistent across both representations.
  uint64_t low_u64() const {
    if (small()) return uint64_t(u128(sv()));
    mpz_class r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), bv().get_mpz_t(), 64);
    return mpz_get_ui(r.get_mpz_t());
  }

  mpz_class to_mpz() const { return small() ? i128_to_mpz(sv()) : bv(); }

  std::string to_decimal() const {
    if (!small()) return bv().get_str();
    i128 v = sv();
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 m = neg ? u128{0} - u128(v) : u128(v);
    char buf[48];
    int i = 48;
    while (m) {
      buf[--i] = char('0' + int(m % 10));
      m /= 10;
    }
    std::string out;
    if (neg) out.push_back('-');
    out.append(buf + i, buf + 48);
    return out;
  }

  Int pow(unsigned e) const {
    Int r{1}, b{*this};
    for (;;) {
      if (e & 1u) r = r * b;
      e >>= 1u;
      if (!e) break;
      b = b * b;
    }
    return r;
  }

  Int operator-() const {
    if (small() && sv() != kI128Min) return Int(-sv());
    return Int(mpz_class(-to_mpz()));
  }

  friend Int operator+(const Int& a, const Int& b) {
    if (a.small() && b.small()) {
      i128 r;
      if (!__builtin_add_overflow(a.sv(), b.sv(), &r)) return Int(r);
    }
    return Int(mpz_class(a.to_mpz() + b.to_mpz()));
  }
  friend Int operator-(const Int& a, const Int& b) {
    if (a.small() && b.small()) {
      i128 r;
      if (!__builtin_sub_overflow(a.sv(), b.sv(), &r)) return Int(r);
    }
    return Int(mpz_class(a.to_mpz() - b.to_mpz()));
  }
  friend Int operator*(const Int& a, const Int& b) {
    if (a.small() && b.small()) {
      i128 r;
      if (!mul_overflow(a.sv(), b.sv(), r)) return Int(r);
    }
    return Int(mpz_class(a.to_mpz() * b.to_mpz()));
  }

  Int& operator+=(const Int& o) { return *this = *this + o; }
  Int& operator-=(const Int& o) { return *this = *this - o; }
  Int& operator*=(const Int& o) { return *this = *this * o; }

  bool operator==(const Int& o) const = default;

  friend std::strong_ordering operator<=>(const Int& a, const Int& b) {
    if (a.small() && b.small()) {
      i128 x = a.sv(), y = b.sv();
      return x < y   ? std::strong_ordering::less
             : x > y ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }
    if (a.small() != b.small()) {
      // The promoted operand is outside the __int128 range, so its sign decides.
      const Int& big = a.small() ? b : a;
      bool big_is_b = a.small();
      bool big_positive = big.sign() > 0;
      if (big_is_b) return big_positive ? std::strong_ordering::less : std::strong_ordering::greater;
      return big_positive ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    int c = mpz_cmp(a.bv().get_mpz_t(), b.bv().get_mpz_t());
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Int& v) { return os << v.to_decimal(); }

 private:
  static constexpr i128 kI128Min = i128(u128{1} << 127);
  static constexpr i128 kI128Max = i128((u128{1} << 127) - 1);

  i128 sv() const { return std::get<0>(rep_); }
  const mpz_class& bv() const { return std::get<1>(rep_); }

  static mpz_class i128_to_mpz(i128 v) {
    bool neg = v < 0;
    u128 m = neg ? u128{0} - u128(v) : u128(v);
    mpz_class z{static_cast<unsigned long>(m >> 64)};
    z <<= 64;
    z += static_cast<unsigned long>(m);
    if (neg) z = -z;
    return z;
  }

  static i128 mpz_to_i128(const mpz_class& z) {
    mpz_class a = abs(z);
    mpz_class hi = a >> 64;
    uint64_t hi64 = mpz_get_ui(hi.get_mpz_t());
    mpz_class lo = a - (hi << 64);
    uint64_t lo64 = mpz_get_ui(lo.get_mpz_t());
    u128 m = (u128(hi64) << 64) | lo64;
    return sgn(z) < 0 ? i128(u128{0} - m) : i128(m);
  }

  void assign(const mpz_class& z) {
    size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
    if (bits <= 127 || (bits == 128 && sgn(z) < 0 && mpz_scan1(z.get_mpz_t(), 0) == 127)) {
      rep_ = mpz_to_i128(z);
    } else {
      rep_ = z;
    }
  }

  /// Checked 128-bit multiply. Returns true on overflow (r untouched).
  /// Avoids __builtin_mul_overflow for TImode, which needs a libgcc call
  /// that is not always available.
  static bool mul_overflow(i128 a, i128 b, i128& r) {
    u128 ua = a < 0 ? u128{0} - u128(a) : u128(a);
    u128 ub = b < 0 ? u128{0} - u128(b) : u128(b);
    if (((ua | ub) >> 63) == 0) {  // both magnitudes < 2^63: cannot overflow
      r = a * b;
      return false;
    }
    if (a == 0 || b == 0) {
      r = 0;
      return false;
    }
    bool neg = (a < 0) != (b < 0);
    u128 lim = neg ? (u128{1} << 127) : ((u128{1} << 127) - 1);
    if (ua > lim / ub) return true;
    u128 m = ua * ub;
    if (neg) {
      r = m == (u128{1} << 127) ? kI128Min : -i128(m);
    } else {
      r = i128(m);
    }
    return false;
  }

  std::variant<i128, mpz_class> rep_{i128{0}};
};

}  // namespace pps
