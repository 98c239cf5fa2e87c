#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "hardrods/bigrational.hpp"

namespace hardrods {

// Floating value with a separate binary exponent, value = mant * 2^exp2.
// Survives magnitudes far outside double range (1e-5000 and below), which
// the Irwin-Hall tails and parking probabilities reach routinely.
// Invariant: mant == 0, or |mant| in [0.5, 1).
struct ExtReal {
  double mant = 0.0;
  std::int64_t exp2 = 0;

  static ExtReal zero() { return {}; }
  static ExtReal one() { return {0.5, 1}; }

  static ExtReal from_double(double d) {
    if (d == 0.0) return {};
    if (!std::isfinite(d)) throw std::domain_error("ExtReal: non-finite double");
    int e = 0;
    double m = std::frexp(d, &e);
    return {m, e};
  }

  // exp(ln_value) without overflow; -inf maps to zero.
  static ExtReal from_ln(double ln_value) {
    if (ln_value == -std::numeric_limits<double>::infinity()) return {};
    if (!std::isfinite(ln_value)) throw std::domain_error("ExtReal: bad log");
    constexpr double kLn2 = 0.6931471805599453094172321;
    double e = std::floor(ln_value / kLn2);
    double r = ln_value - e * kLn2;  // in [0, ln 2] up to rounding
    ExtReal out = from_double(std::exp(r));
    out.exp2 += static_cast<std::int64_t>(e);
    return out;
  }

  // Correctly rounded to ~2^-79 relative error.
  static ExtReal from_rational(const BigRational& q) {
    using boost::multiprecision::msb;
    if (q == 0) return {};
    BigInt num = numerator(q);
    BigInt den = denominator(q);
    int sign = 1;
    if (num < 0) {
      sign = -1;
      num = -num;
    }
    auto nb = static_cast<std::int64_t>(msb(num));
    auto db = static_cast<std::int64_t>(msb(den));
    std::int64_t shift = 80 + db - nb;
    BigInt scaled = shift >= 0 ? BigInt(num << shift) : BigInt(num >> -shift);
    BigInt quot = scaled / den;
    ExtReal out = from_double(sign * quot.convert_to<double>());
    out.exp2 -= shift;
    return out;
  }

  bool is_zero() const { return mant == 0.0; }

  ExtReal operator*(const ExtReal& o) const {
    if (is_zero() || o.is_zero()) return {};
    ExtReal r = from_double(mant * o.mant);
    r.exp2 += exp2 + o.exp2;
    return r;
  }

  ExtReal operator*(double s) const { return *this * from_double(s); }
  ExtReal operator/(double s) const { return *this * from_double(1.0 / s); }

  ExtReal& operator+=(const ExtReal& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = o;
      return *this;
    }
    std::int64_t d = exp2 - o.exp2;
    if (d > 128) return *this;
    if (d < -128) {
      *this = o;
      return *this;
    }
    double m = mant + std::ldexp(o.mant, static_cast<int>(-d));
    std::int64_t base = exp2;
    if (m == 0.0) {
      *this = {};
      return *this;
    }
    *this = from_double(m);
    exp2 += base;
    return *this;
  }

  // Natural log; requires a strictly positive value.
  double ln() const {
    if (mant <= 0.0) throw std::domain_error("ExtReal::ln of non-positive value");
    constexpr double kLn2 = 0.6931471805599453094172321;
    return std::log(mant) + static_cast<double>(exp2) * kLn2;
  }

  // Saturates: exponents beyond double range collapse to +-inf or 0.
  double to_double() const {
    if (is_zero()) return 0.0;
    if (exp2 > 1100) {
      return mant > 0 ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
    }
    if (exp2 < -1140) return mant > 0 ? 0.0 : -0.0;
    return std::ldexp(mant, static_cast<int>(exp2));
  }

  bool representable_as_double() const {
    return is_zero() || (exp2 <= 1023 && exp2 >= -1020);
  }

  // Magnitude ordering (positive values).
  bool less_than(const ExtReal& o) const {
    if (is_zero()) return !o.is_zero();
    if (o.is_zero()) return false;
    if (exp2 != o.exp2) return exp2 < o.exp2;
    return mant < o.mant;
  }
};

}  // namespace hardrods
