#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hypb {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Element of Q(sqrt(d)) for a squarefree integer d > 1, stored as a + b*sqrt(d)
/// with exact rational a, b. Closed under +, -, *, / and under square roots of
/// the values that occur in Standard-metric Radon-Nikodym chains (rational
/// squares times d^{0 or 1}). d is carried per value; the additive/multiplicative
/// identities adapt to the other operand's radicand.
struct QuadExt {
  Rational a{0};
  Rational b{0};
  int d = 0;  // 0 = pure rational, radicand not yet pinned

  QuadExt() = default;
  QuadExt(long v) : a(v) {}  // NOLINT: implicit for literals
  explicit QuadExt(Rational r) : a(std::move(r)) {}
  QuadExt(Rational ra, Rational rb, int rad) : a(std::move(ra)), b(std::move(rb)), d(rad) {}

  static QuadExt fraction(long num, long den) { return QuadExt(Rational(num, den)); }
  static QuadExt root(int rad) { return QuadExt(0, 1, rad); }

  bool is_rational() const { return b == 0; }

  friend int merge_radicand(const QuadExt& x, const QuadExt& y) {
    if (x.d == 0) return y.d;
    if (y.d == 0 || x.d == y.d) return x.d;
    throw std::logic_error("QuadExt: mixed radicands");
  }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    return QuadExt(x.a + y.a, x.b + y.b, merge_radicand(x, y));
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    return QuadExt(x.a - y.a, x.b - y.b, merge_radicand(x, y));
  }
  friend QuadExt operator-(const QuadExt& x) { return QuadExt(-x.a, -x.b, x.d); }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    int rad = merge_radicand(x, y);
    return QuadExt(x.a * y.a + Rational(rad) * x.b * y.b, x.a * y.b + x.b * y.a, rad);
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    int rad = merge_radicand(x, y);
    Rational n = y.a * y.a - Rational(rad) * y.b * y.b;
    if (n == 0) throw std::domain_error("QuadExt: division by zero");
    return x * QuadExt(y.a / n, -y.b / n, rad);
  }
  QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
  QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
  QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }
  QuadExt& operator/=(const QuadExt& y) { return *this = *this / y; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    if (x.a != y.a || x.b != y.b) return false;
    if (x.b != 0) merge_radicand(x, y);
    return true;
  }
};

inline double to_double(const QuadExt& x) {
  double v = x.a.convert_to<double>();
  if (x.b != 0) v += x.b.convert_to<double>() * std::sqrt(static_cast<double>(x.d));
  return v;
}
inline double to_double(double x) { return x; }

namespace detail {
inline bool exact_sqrt(const BigInt& n, BigInt& root) {
  if (n < 0) return false;
  root = boost::multiprecision::sqrt(n);
  return root * root == n;
}
}  // namespace detail

/// Exact square root within Q(sqrt(d)); defined for nonnegative rationals of
/// the form q^2 or q^2*d. Throws otherwise.
inline QuadExt sqrt_scalar(const QuadExt& x) {
  if (!x.is_rational()) throw std::domain_error("QuadExt sqrt: non-rational argument");
  if (x.a == 0) return QuadExt(Rational(0), Rational(0), x.d);
  if (x.a < 0) throw std::domain_error("QuadExt sqrt: negative argument");
  BigInt num = numerator(x.a), den = denominator(x.a), rn, rd;
  if (detail::exact_sqrt(num, rn) && detail::exact_sqrt(den, rd))
    return QuadExt(Rational(rn, rd), Rational(0), x.d);
  if (x.d <= 1) throw std::domain_error("QuadExt sqrt: radicand not pinned");
  Rational q = x.a / x.d;  // try q^2 * d
  num = numerator(q);
  den = denominator(q);
  if (detail::exact_sqrt(num, rn) && detail::exact_sqrt(den, rd))
    return QuadExt(Rational(0), Rational(rn, rd), x.d);
  throw std::domain_error("QuadExt sqrt: value is not q^2 or q^2*d");
}
inline double sqrt_scalar(double x) { return std::sqrt(x); }

inline QuadExt abs_scalar(const QuadExt& x) {
  return to_double(x) < 0 ? -x : x;
}
inline double abs_scalar(double x) { return std::abs(x); }

}  // namespace hypb
