#pragma once

#include <cmath>
#include <deque>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

#include "hardrods/bigrational.hpp"
#include "hardrods/extfloat.hpp"

// Irwin-Hall densities u_m: the density of a sum of m independent
// uniform(0,1) variables,
//
//   u_m(t) = 1/(m-1)! * sum_{l=0}^{floor(t)} (-1)^l C(m,l) (t-l)^{m-1},
//
// a piecewise polynomial of degree m-1 supported on (0, m).  The
// alternating sum cancels catastrophically in doubles (all digits gone
// near m ~ 45-50), so the reference path evaluates it in exact rational
// arithmetic at rational abscissae and only rounds the final value.

namespace hardrods {

namespace detail {

// Memoized factorials and binomial rows.  deque keeps element references
// stable across growth, so read access stays valid outside the lock.
inline const BigInt& factorial_big(unsigned n) {
  static std::shared_mutex mu;
  static std::deque<BigInt> table{BigInt(1), BigInt(1)};
  {
    std::shared_lock lock(mu);
    if (n < table.size()) return table[n];
  }
  std::unique_lock lock(mu);
  while (table.size() <= n) {
    table.push_back(table.back() * BigInt(table.size()));
  }
  return table[n];
}

inline const std::vector<BigInt>& binomial_row(unsigned m) {
  static std::shared_mutex mu;
  static std::deque<std::vector<BigInt>> rows;
  {
    std::shared_lock lock(mu);
    if (m < rows.size()) return rows[m];
  }
  std::unique_lock lock(mu);
  while (rows.size() <= m) {
    unsigned k = static_cast<unsigned>(rows.size());
    std::vector<BigInt> row(k + 1);
    row[0] = 1;
    for (unsigned j = 1; j <= k; ++j) {
      row[j] = row[j - 1] * BigInt(k - j + 1) / BigInt(j);
    }
    rows.push_back(std::move(row));
  }
  return rows[m];
}

}  // namespace detail

// Exact value of u_m(t).  Zero outside the open support (0, m); for m = 1
// this is the indicator of (0, 1).
inline BigRational irwin_hall_rational(unsigned m, const BigRational& t_in) {
  if (m == 0) throw std::domain_error("irwin_hall: m must be >= 1");
  if (t_in <= 0 || t_in >= BigRational(static_cast<int>(m))) return BigRational(0);
  if (m == 1) return BigRational(1);

  // u_m(t) = u_m(m - t); evaluating on the smaller side keeps the l-sum
  // short near the right edge.
  BigRational t = t_in;
  if (2 * t > BigRational(static_cast<int>(m))) {
    t = BigRational(static_cast<int>(m)) - t;
  }

  const BigInt a = numerator(t);
  const BigInt b = denominator(t);
  const auto lmax = static_cast<unsigned>(BigInt(a / b).convert_to<long long>());
  const auto& row = detail::binomial_row(m);

  BigInt acc = 0;
  for (unsigned l = 0; l <= lmax; ++l) {
    BigInt r = a - BigInt(l) * b;  // numerator of (t - l)
    if (r == 0) continue;          // (t-l)^{m-1} vanishes
    BigInt term = row[l] * boost::multiprecision::pow(r, m - 1);
    if (l & 1u) {
      acc -= term;
    } else {
      acc += term;
    }
  }
  return BigRational(acc, boost::multiprecision::pow(b, m - 1) *
                              detail::factorial_big(m - 1));
}

// u_m(t) rounded to an extended-exponent float.
inline ExtReal irwin_hall(unsigned m, const BigRational& t) {
  return ExtReal::from_rational(irwin_hall_rational(m, t));
}

inline ExtReal irwin_hall(unsigned m, double t) {
  if (m == 0) throw std::domain_error("irwin_hall: m must be >= 1");
  if (!std::isfinite(t)) throw std::domain_error("irwin_hall: t must be finite");
  return irwin_hall(m, rational_from_double(t));
}

// Density at x of a sum of m uniform(1,2) variables: u_m(x - m),
// supported on (m, 2m).
inline ExtReal irwin_hall_shifted(unsigned m, const BigRational& x) {
  return irwin_hall(m, x - BigRational(static_cast<int>(m)));
}

inline ExtReal irwin_hall_shifted(unsigned m, double x) {
  if (m == 0) throw std::domain_error("irwin_hall: m must be >= 1");
  if (!std::isfinite(x)) throw std::domain_error("irwin_hall: x must be finite");
  return irwin_hall_shifted(m, rational_from_double(x));
}

// Sign-and-log form of irwin_hall_shifted for log-space accumulation.
struct LogDensity {
  bool positive = false;  // false marks an exact zero (outside support)
  double log_value = -std::numeric_limits<double>::infinity();
};

inline LogDensity irwin_hall_log(unsigned m, const BigRational& x) {
  ExtReal u = irwin_hall_shifted(m, x);
  if (u.is_zero()) return {};
  return {true, u.ln()};
}

inline LogDensity irwin_hall_log(unsigned m, double x) {
  if (m == 0) throw std::domain_error("irwin_hall: m must be >= 1");
  if (!std::isfinite(x)) throw std::domain_error("irwin_hall: x must be finite");
  return irwin_hall_log(m, rational_from_double(x));
}

// Direct double-precision evaluation.  Usable below m ~ 25 where the
// alternating sum still keeps most digits; the rational path above is the
// reference it is tested against.
inline double irwin_hall_fast(unsigned m, double t) {
  if (m == 0) throw std::domain_error("irwin_hall: m must be >= 1");
  if (!std::isfinite(t)) throw std::domain_error("irwin_hall: t must be finite");
  if (t <= 0.0 || t >= static_cast<double>(m)) return 0.0;
  if (m == 1) return 1.0;
  if (2.0 * t > m) t = m - t;
  double acc = 0.0;
  double binom = 1.0;  // C(m, l)
  const auto lmax = static_cast<unsigned>(t);
  for (unsigned l = 0; l <= lmax; ++l) {
    if (l > 0) binom *= static_cast<double>(m - l + 1) / static_cast<double>(l);
    double term = binom * std::pow(t - l, static_cast<int>(m - 1));
    acc += (l & 1u) ? -term : term;
  }
  return acc / std::tgamma(static_cast<double>(m));
}

// Rigorous upper bound for ln u_m(t): the simplex-volume bound
// u_m(t) <= min(t, m-t)^{m-1}/(m-1)! combined with sup u_m <= 1.
inline double irwin_hall_log_bound(unsigned m, double t) {
  if (t <= 0.0 || t >= static_cast<double>(m)) {
    return -std::numeric_limits<double>::infinity();
  }
  if (m == 1) return 0.0;
  double edge = std::min(t, static_cast<double>(m) - t);
  double b = (m - 1) * std::log(edge) - std::lgamma(static_cast<double>(m));
  return std::min(b, 0.0);
}

}  // namespace hardrods
