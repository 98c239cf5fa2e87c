#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hardrods/bigrational.hpp"
#include "hardrods/eos.hpp"
#include "hardrods/extfloat.hpp"
#include "hardrods/grid.hpp"
#include "hardrods/irwin_hall.hpp"
#include "hardrods/parallel.hpp"

// Pair distribution g(x) of the parking fluid in the thermodynamic limit:
//
//   g(x) = sum_m W(p)^m e^{-p x} u_m(x - m) / rho,   W(p) = 1/K(p),
//
// where the sum is finite for every x: u_m(x-m) is supported on (m, 2m),
// so only m with m < x < 2m contribute.  Terms are combined in log space
// (m ln W - p x swings across +-10^4) with the extended-exponent
// accumulator.  Grid points landing exactly on a breakpoint take the
// right limit, so g(1) = W e^{-p}/rho from the m = 1 indicator.

namespace hardrods {

namespace detail {

struct GTerm {
  unsigned m;
  double bound;  // rigorous upper bound for ln of the term
};

}  // namespace detail

inline double g_point(double p, const BigRational& x) {
  if (!std::isfinite(p)) throw std::domain_error("g_point: p must be finite");
  if (x < 0) {
    throw std::domain_error("g_point: x must be >= 0; use g(-x) = g(x)");
  }
  if (x < 1) return 0.0;

  const double rho = density_from_pressure(p);
  const double log_w = gibbs_per_particle(p);  // ln W(p) = -ln K(p)
  const double xd = to_double(x);

  std::vector<detail::GTerm> terms;
  if (x < 2) {
    // m = 1: right-continuous indicator of [1, 2).
    terms.push_back({1u, log_w - p * xd});
  }
  const auto m_lo_big = rational_floor(x / 2) + 1;
  auto m_lo = static_cast<unsigned>(m_lo_big.convert_to<long long>());
  auto m_hi = static_cast<unsigned>(rational_floor(x).convert_to<long long>());
  if (is_integer(x)) --m_hi;  // open support on the right: m < x strictly
  for (unsigned m = std::max(2u, m_lo); m <= m_hi; ++m) {
    double t = xd - m;
    double b = m * log_w - p * xd + irwin_hall_log_bound(m, t);
    if (b > -std::numeric_limits<double>::infinity()) terms.push_back({m, b});
  }
  std::sort(terms.begin(), terms.end(),
            [](const detail::GTerm& a, const detail::GTerm& b) {
              return a.bound > b.bound;
            });

  ExtReal sum = ExtReal::zero();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!sum.is_zero()) {
      // Everything still pending is bounded by its sorted head; stop once
      // the remainder cannot move the sum at the 1e-19 level.
      double rest = terms[i].bound + std::log(static_cast<double>(terms.size() - i));
      if (rest < sum.ln() - 45.0) break;
    }
    const unsigned m = terms[i].m;
    ExtReal u;
    if (m == 1) {
      u = ExtReal::one();
    } else {
      u = irwin_hall(m, x - BigRational(static_cast<int>(m)));
      if (u.is_zero()) continue;
    }
    sum += u * ExtReal::from_ln(m * log_w - p * xd);
  }
  return (sum / rho).to_double();
}

inline double g_point(double p, double x) {
  if (!std::isfinite(x)) throw std::domain_error("g_point: x must be finite");
  return g_point(p, rational_from_double(x));
}

// g on the uniform grid i * step, i = 0 .. floor(x_max/step).
inline GridFunction g_grid(double p, double x_max, const BigRational& step) {
  if (!(x_max > 0.0) || x_max > 200.0) {
    throw std::invalid_argument("g_grid: x_max must lie in (0, 200]");
  }
  if (step <= 0 || to_double(step) < 1e-4) {
    throw std::invalid_argument("g_grid: step must be >= 1e-4");
  }
  if (denominator(step) > 1000000) {
    throw std::invalid_argument("g_grid: step denominator must be <= 10^6");
  }
  auto n = static_cast<std::size_t>(
      rational_floor(rational_from_double(x_max) / step).convert_to<long long>());
  GridFunction out;
  out.x0 = 0.0;
  out.step = step;
  out.values.assign(n + 1, 0.0);
  detail::parallel_for(n + 1, [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t i = b; i < e; ++i) {
      out.values[i] = g_point(p, BigRational(static_cast<long long>(i)) * step);
    }
  });
  return out;
}

// h(x) = g(x) - 1 on the same grid.
inline GridFunction h_grid(double p, double x_max, const BigRational& step) {
  GridFunction g = g_grid(p, x_max, step);
  for (double& v : g.values) v -= 1.0;
  return g;
}

// Exponential-decay fit of the correlation tail.
struct TailFit {
  double inv_xi = 0.0;   // decay rate of the |h| peak envelope
  double period = 0.0;   // oscillation period (twice the |h| peak gap)
  double x_lo = 0.0;
  double x_hi = 0.0;
  double residual = 0.0;  // rms residual of the log-linear fit
  int n_maxima = 0;
};

// Linear regression of ln(local maxima of |h|) against x inside the
// window; the mean gap between successive maxima gives half the period.
inline TailFit fit_tail(const GridFunction& h, double x_lo, double x_hi) {
  if (!(x_lo < x_hi)) throw std::invalid_argument("fit_tail: empty window");
  const double sd = h.step_d();
  if (x_lo < h.x0 || x_hi > h.x(h.size() - 1) + 0.5 * sd) {
    throw std::invalid_argument("fit_tail: window outside grid");
  }
  std::vector<double> px, py;
  for (std::size_t i = 1; i + 1 < h.size(); ++i) {
    double xi = h.x(i);
    if (xi < x_lo || xi > x_hi) continue;
    double c = std::abs(h.values[i]);
    if (c <= 1e-300) continue;
    if (c > std::abs(h.values[i - 1]) && c > std::abs(h.values[i + 1])) {
      px.push_back(xi);
      py.push_back(std::log(c));
    }
  }
  if (px.size() < 5) {
    throw std::runtime_error("fit_tail: fewer than 5 local maxima of |h| in window");
  }
  const auto n = static_cast<double>(px.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < px.size(); ++i) {
    sx += px[i];
    sy += py[i];
    sxx += px[i] * px[i];
    sxy += px[i] * py[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double icept = (sy - slope * sx) / n;
  if (!(slope < 0.0)) {
    throw std::runtime_error("fit_tail: |h| peaks do not decay over the window");
  }
  double ss = 0;
  for (std::size_t i = 0; i < px.size(); ++i) {
    double r = py[i] - (icept + slope * px[i]);
    ss += r * r;
  }
  TailFit fit;
  fit.inv_xi = -slope;
  fit.period = 2.0 * (px.back() - px.front()) / (n - 1.0);
  fit.x_lo = x_lo;
  fit.x_hi = x_hi;
  fit.residual = std::sqrt(ss / n);
  fit.n_maxima = static_cast<int>(px.size());
  return fit;
}

}  // namespace hardrods
