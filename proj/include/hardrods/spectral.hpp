#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardrods/eos.hpp"

// Laplace-transform spectrum of the pair correlation.  The transform of
// g has the closed form
//
//   ghat(lambda) = K(lambda + p) / (rho * (K(p) - K(lambda + p))),
//
// so the poles of hhat = ghat - 1/lambda are the nonzero roots of
// K(lambda + p) = K(p) in the half-plane Re(lambda) < 0.  The dominant
// root (largest real part) sets the correlation length xi = -1/Re and
// the oscillation pseudo-period 2 pi / |Im|.
//
// All root work runs on the normalized ratio R = K(lambda+p)/K(p):
// K(p) spans e^{+-2|p|}, so the raw difference K(lambda+p) - K(p) cannot
// be driven below a fixed absolute tolerance at large |p|, while |R - 1|
// can.  Residuals are therefore relative.

namespace hardrods {

namespace detail {

struct KernelRatio {
  std::complex<double> value;      // K(lambda+p)/K(p)
  std::complex<double> dlog;       // d/dlambda ln K(lambda+p)
};

inline std::complex<double> kernel_log_deriv(std::complex<double> z) {
  if (std::abs(z) < kKernelSeriesRadius) {
    std::complex<double> num(0), den(0), zp(1);
    for (int j = 0; j <= 20; ++j) {
      double c = kernel_series_coeff(j);
      den += c * zp;
      if (j >= 1) num += c * static_cast<double>(j) * (zp / z);
      zp *= z;
    }
    return num / den;
  }
  std::complex<double> e1 = std::exp(-z), e2 = std::exp(-2.0 * z);
  return (-e1 + 2.0 * e2) / (e1 - e2) - 1.0 / z;
}

inline KernelRatio kernel_ratio(double p, std::complex<double> lambda) {
  const std::complex<double> zp = lambda + p;
  if (p >= 1.0) {
    std::complex<double> em = std::exp(-zp);
    std::complex<double> r = std::exp(-lambda) * (1.0 - em) /
                             (-std::expm1(-p)) * (p / zp);
    std::complex<double> dlog = -1.0 + em / (1.0 - em) - 1.0 / zp;
    return {r, dlog};
  }
  if (p <= -1.0) {
    std::complex<double> ep = std::exp(zp);
    std::complex<double> r = std::exp(-2.0 * lambda) * (ep - 1.0) /
                             std::expm1(p) * (p / zp);
    std::complex<double> dlog = -2.0 + ep / (ep - 1.0) - 1.0 / zp;
    return {r, dlog};
  }
  std::complex<double> r = spacing_kernel(zp) / spacing_kernel(std::complex<double>(p));
  return {r, kernel_log_deriv(zp)};
}

}  // namespace detail

// Laplace transform of g evaluated at complex lambda.
inline std::complex<double> laplace_g(double p, std::complex<double> lambda) {
  if (!std::isfinite(p)) throw std::domain_error("laplace_g: p must be finite");
  auto [r, dlog] = detail::kernel_ratio(p, lambda);
  (void)dlog;
  std::complex<double> denom = 1.0 - r;
  if (std::abs(denom) < 1e-9) {
    throw std::domain_error("laplace_g: lambda lies too close to a pole");
  }
  return r / (density_from_pressure(p) * denom);
}

// K(lambda+p) - K(p); its nonzero roots are the poles of hhat.  The
// lambda = -p point is a removable singularity of the original quotient
// and evaluates to 1 - K(p) through the series.
inline std::complex<double> pole_equation(double p, std::complex<double> lambda) {
  if (!std::isfinite(p)) throw std::domain_error("pole_equation: p must be finite");
  return spacing_kernel(lambda + std::complex<double>(p)) -
         spacing_kernel(std::complex<double>(p));
}

// A located pole of hhat.  The conjugate root is implied, not stored.
struct Pole {
  std::complex<double> lambda;  // a + ib, a < 0, b > 0 for n > 0
  int index_n = 0;              // asymptotic branch label
  double residual = 0.0;        // |K(lambda+p)/K(p) - 1| at the root
  int newton_iters = 0;
};

namespace detail {

struct NewtonResult {
  std::complex<double> lambda;
  double residual;
  int iters;
};

inline NewtonResult newton_pole(double p, std::complex<double> seed) {
  std::complex<double> lam = seed;
  double best = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= 100; ++it) {
    auto [r, dlog] = kernel_ratio(p, lam);
    double res = std::abs(r - 1.0);
    if (res < best) best = res;
    if (res <= 5e-14) return {lam, res, it};
    std::complex<double> denom = r * dlog;
    if (denom == std::complex<double>(0.0)) break;
    std::complex<double> step = -(r - 1.0) / denom;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    lam += step;
    if (std::abs(lam) > 1e8) break;
  }
  throw std::runtime_error("find_pole: Newton iteration did not converge (residual " +
                           std::to_string(best) + ")");
}

inline std::complex<double> pole_seed(double p, int n) {
  const double pi = 3.14159265358979323846;
  if (p > 0) {
    return {-2.0 * n * n * pi * pi / (p * p), 2.0 * n * pi * (1.0 - 1.0 / p)};
  }
  return {-n * n * pi * pi / (4.0 * p * p), n * pi * (1.0 - 0.5 / p)};
}

}  // namespace detail

// Locates the branch-n pole at pressure p.  For |p| >= 8 the asymptotic
// seed feeds Newton directly; for |p| < 8 the root is continued in from
// |p| = 30 in steps of 0.5, reusing each converged root as the next
// seed (this covers p = 0, where the equation itself is regular).
inline Pole find_pole(double p, int n) {
  if (n == 0) throw std::invalid_argument("find_pole: branch index must be nonzero");
  if (!std::isfinite(p)) throw std::domain_error("find_pole: p must be finite");
  const int nn = std::abs(n);
  detail::NewtonResult r{};
  if (std::abs(p) >= 8.0) {
    r = detail::newton_pole(p, detail::pole_seed(p, nn));
  } else {
    double pc = p > 0 || (p == 0.0) ? 30.0 : -30.0;
    r = detail::newton_pole(pc, detail::pole_seed(pc, nn));
    while (pc != p) {
      pc = std::abs(pc - p) <= 0.5 ? p : pc - std::copysign(0.5, pc - p);
      r = detail::newton_pole(pc, r.lambda);
    }
  }
  if (std::abs(r.lambda) < 1e-8) {
    throw std::runtime_error(
        "find_pole: converged to the trivial root lambda = 0 (branch " +
        std::to_string(n) + ")");
  }
  if (!(r.lambda.real() < 0.0)) {
    throw std::runtime_error("find_pole: root left the half-plane Re(lambda) < 0");
  }
  if (!(r.residual < 1e-12)) {
    throw std::runtime_error("find_pole: residual above 1e-12");
  }
  Pole out;
  out.lambda = n > 0 ? r.lambda : std::conj(r.lambda);
  out.index_n = n;
  out.residual = r.residual;
  out.newton_iters = r.iters;
  return out;
}

// Correlation length and pseudo-period from the dominant pole.
struct CorrelationSummary {
  double p = 0.0;
  double xi = 0.0;      // -1/Re(dominant)
  double period = 0.0;  // 2 pi / |Im(dominant)|
  Pole dominant;
};

// Scans branches n = 1..4 and keeps the root with the largest real part.
// Colliding branches (two labels on one root) are reported, not ignored.
inline CorrelationSummary correlation_summary(double p) {
  std::vector<Pole> poles;
  for (int n = 1; n <= 4; ++n) poles.push_back(find_pole(p, n));
  for (std::size_t i = 0; i < poles.size(); ++i) {
    for (std::size_t j = i + 1; j < poles.size(); ++j) {
      double d = std::abs(poles[i].lambda - poles[j].lambda);
      if (d < 1e-6 * (1.0 + std::abs(poles[i].lambda))) {
        throw std::runtime_error("correlation_summary: branches " +
                                 std::to_string(poles[i].index_n) + " and " +
                                 std::to_string(poles[j].index_n) +
                                 " converged to one root");
      }
    }
  }
  const Pole* dom = &poles[0];
  for (const Pole& q : poles) {
    if (q.lambda.real() > dom->lambda.real()) dom = &q;
  }
  CorrelationSummary s;
  s.p = p;
  s.xi = -1.0 / dom->lambda.real();
  s.period = 2.0 * 3.14159265358979323846 / std::abs(dom->lambda.imag());
  s.dominant = *dom;
  return s;
}

// hhat^Laplace(lambda) = ghat(lambda) - 1/lambda, finite at lambda = 0.
inline std::complex<double> laplace_h(double p, std::complex<double> lambda) {
  if (std::abs(lambda) >= 1e-3) {
    return laplace_g(p, lambda) - 1.0 / lambda;
  }
  // Small-lambda series of the subtracted transform.  With K-derivatives
  // at p and rho K' = -K:
  //   hhat = [A0 + A1 L + A2 L^2] / [K - rho K''/2 L - rho K'''/6 L^2 - ...]
  double rho = density_from_pressure(p);
  double K = spacing_kernel_deriv(0, p);
  double K1 = spacing_kernel_deriv(1, p);
  double K2 = spacing_kernel_deriv(2, p);
  double K3 = spacing_kernel_deriv(3, p);
  double K4 = spacing_kernel_deriv(4, p);
  double A0 = K1 + rho * K2 / 2.0;
  double A1 = K2 / 2.0 + rho * K3 / 6.0;
  double A2 = K3 / 6.0 + rho * K4 / 24.0;
  std::complex<double> L = lambda;
  std::complex<double> num = A0 + L * (A1 + L * A2);
  std::complex<double> den =
      K - L * (rho * K2 / 2.0 + L * (rho * K3 / 6.0 + L * rho * K4 / 24.0));
  return num / den;
}

// Fourier transform of h: hhat(k) = hhat^L(ik) + hhat^L(-ik).  Real and
// even for real k.
inline std::complex<double> fourier_h(double p, double k) {
  if (!std::isfinite(k)) throw std::domain_error("fourier_h: k must be finite");
  std::complex<double> ik(0.0, k);
  return laplace_h(p, ik) + laplace_h(p, -ik);
}

}  // namespace hardrods
