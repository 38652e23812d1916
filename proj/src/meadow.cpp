#include "credal/meadow.hpp"

#include <cctype>
#include <ostream>

namespace credal {

Rational::Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den.is_zero()) throw ParameterOutOfRange("rational literal with zero denominator");
  // Move the sign to the numerator ourselves: the backing type reduces, but
  // rejects negative denominators outright.
  if (den < 0)
    v_ = Backing(-num, -den);
  else
    v_ = Backing(num, den);
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty rational literal");

  bool neg = false;
  if (s.front() == '-' || s.front() == '+') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw ParseError("sign without digits in rational literal");

  auto make = [&](const BigInt& num, const BigInt& den) {
    Rational r(num, den);
    return neg ? -r : r;
  };

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view ns = s.substr(0, slash), ds = s.substr(slash + 1);
    if (!all_digits(ns) || !all_digits(ds))
      throw ParseError("malformed fraction '" + std::string(text) + "'");
    BigInt den{std::string(ds)};
    if (den.is_zero()) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return make(BigInt{std::string(ns)}, den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view is = s.substr(0, dot), fs = s.substr(dot + 1);
    if (is.empty() && fs.empty()) throw ParseError("malformed decimal '" + std::string(text) + "'");
    if (!is.empty() && !all_digits(is))
      throw ParseError("malformed decimal '" + std::string(text) + "'");
    if (!fs.empty() && !all_digits(fs))
      throw ParseError("malformed decimal '" + std::string(text) + "'");
    BigInt num = is.empty() ? BigInt(0) : BigInt(std::string(is));
    BigInt den = 1;
    for (char c : fs) {
      num *= 10;
      num += c - '0';
      den *= 10;
    }
    return make(num, den);
  }
  if (!all_digits(s)) throw ParseError("malformed rational '" + std::string(text) + "'");
  return make(BigInt(std::string(s)), 1);
}

std::string Rational::str() const {
  std::string out = numerator().str();
  if (denominator() != 1) out += "/" + denominator().str();
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace credal
