#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include "credal/errors.hpp"

namespace credal {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number with *total* division: x / 0 == 0 for every x,
// including 0 / 0 == 0.  This is the arithmetic the whole engine runs on;
// conditional probabilities stay defined on zero-probability conditions and
// many boundary cases of the revision operations collapse to the right value
// because a zero numerator times an "undefined" ratio contributes zero.
//
// Values are always in canonical form: gcd(num, den) == 1, den > 0.
class Rational {
 public:
  Rational() = default;  // zero
  Rational(int n) : v_(n) {}
  Rational(long long n) : v_(n) {}
  Rational(const BigInt& n) : v_(n) {}
  Rational(long long num, long long den);
  Rational(const BigInt& num, const BigInt& den);

  // Accepts "p/q", integers, and finite decimals ("0.8", "-3.25").
  static Rational parse(std::string_view text);

  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_.is_zero(); }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
  Rational operator-() const { return Rational(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

  // Meadow division, total: a / 0 == 0.
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) return Rational();
    return Rational(a.v_ / b.v_);
  }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // "p/q", or just "p" when q == 1.
  std::string str() const;

  double approx() const { return v_.convert_to<double>(); }

 private:
  using Backing = boost::multiprecision::cpp_rational;
  explicit Rational(Backing v) : v_(std::move(v)) {}
  Backing v_;
};

inline Rational div(const Rational& a, const Rational& b) { return a / b; }
inline Rational inv(const Rational& a) { return Rational(1) / a; }

// The meadow conditional:  cond(x, y, z) == x when y != 0, z when y == 0.
// Implemented literally as (y/y)*x + (1 - y/y)*z.
inline Rational cond(const Rational& x, const Rational& y, const Rational& z) {
  Rational t = y / y;
  return t * x + (Rational(1) - t) * z;
}

inline int sign(const Rational& a) {
  if (a.is_zero()) return 0;
  return a < Rational(0) ? -1 : 1;
}

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace credal
