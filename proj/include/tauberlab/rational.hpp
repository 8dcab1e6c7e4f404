#pragma once
// Exact rational arithmetic on int64 numerator/denominator.  Threshold exponents
// like min((gamma-2)/6, 1/198) at gamma = 2006/1000 must come out as exactly
// 1/1000, which binary doubles cannot represent; comparisons here are exact.
// Intermediates run in __int128 and overflow of the reduced result throws.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tauberlab {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

namespace detail {

inline std::int64_t narrow128(__int128 v) {
  if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
    throw std::overflow_error("rational: int64 overflow");
  return static_cast<std::int64_t>(v);
}

inline Rational make128(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num, b = den;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  Rational r;
  r.num = narrow128(num);
  r.den = narrow128(den);
  return r;
}

}  // namespace detail

inline Rational operator+(const Rational& a, const Rational& b) {
  return detail::make128(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                         static_cast<__int128>(a.den) * b.den);
}
inline Rational operator-(const Rational& a, const Rational& b) {
  return detail::make128(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                         static_cast<__int128>(a.den) * b.den);
}
inline Rational operator*(const Rational& a, const Rational& b) {
  return detail::make128(static_cast<__int128>(a.num) * b.num,
                         static_cast<__int128>(a.den) * b.den);
}
inline Rational operator/(const Rational& a, const Rational& b) {
  if (b.num == 0) throw std::domain_error("rational: division by zero");
  return detail::make128(static_cast<__int128>(a.num) * b.den,
                         static_cast<__int128>(a.den) * b.num);
}
inline Rational operator-(const Rational& a) { return Rational(-a.num, a.den); }

inline bool operator==(const Rational& a, const Rational& b) {
  return a.num == b.num && a.den == b.den;  // both normalized
}
inline bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
inline bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}
inline bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
inline bool operator>(const Rational& a, const Rational& b) { return b < a; }
inline bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

inline Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }

}  // namespace tauberlab
