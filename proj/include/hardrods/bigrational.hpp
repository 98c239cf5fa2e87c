#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hardrods {

using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision rational, kept in lowest terms with positive
// denominator by the backing type.
using BigRational = boost::multiprecision::cpp_rational;

// Exact conversion: every finite double is mantissa * 2^e with integer
// mantissa, hence an exact ratio of machine integers.
inline BigRational rational_from_double(double d) {
  if (!std::isfinite(d)) {
    throw std::domain_error("rational_from_double: argument must be finite");
  }
  if (d == 0.0) return BigRational(0);
  int e = 0;
  double m = std::frexp(d, &e);  // d = m * 2^e, |m| in [0.5, 1)
  // 53 mantissa bits make m * 2^53 an exact integer.
  auto num = BigInt(static_cast<long long>(std::ldexp(m, 53)));
  e -= 53;
  if (e >= 0) {
    return BigRational(num << e);
  }
  return BigRational(num, BigInt(1) << -e);
}

// Parses "a/b", plain integers and decimal literals ("0.05", "-1.25e2" is
// not supported; exponents never appear in the CLI surface).
inline BigRational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return BigRational(num, den);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    return BigRational(BigInt(text));
  }
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  bool neg = !digits.empty() && digits[0] == '-';
  BigInt num(digits);
  BigInt den = 1;
  for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
  (void)neg;
  return BigRational(num, den);
}

// floor(q) as BigInt (works for negative arguments).
inline BigInt rational_floor(const BigRational& q) {
  BigInt n = numerator(q);
  BigInt d = denominator(q);  // > 0
  BigInt quot = n / d;        // truncates toward zero
  if (n < 0 && quot * d != n) --quot;
  return quot;
}

inline bool is_integer(const BigRational& q) { return denominator(q) == 1; }

inline double to_double(const BigRational& q) {
  return q.convert_to<double>();
}

}  // namespace hardrods
