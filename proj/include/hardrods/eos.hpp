#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

// Equation of state of the hard-rod parking fluid.  Everything descends
// from the single-spacing kernel
//
//   K(z) = integral_1^2 e^{-z s} ds = (e^{-z} - e^{-2z}) / z,
//
// an entire function after removing the z = 0 singularity (K(0) = 1).
// The Gibbs potential per particle is -ln K(p), the density obeys
// 1/rho = -K'(p)/K(p), and the pair-correlation spectrum lives on the
// zero set of K(lambda + p) - K(p).

namespace hardrods {

namespace detail {

// Series coefficients: K(z) = sum_j c_j z^j, c_j = (-1)^j (2^{j+1}-1)/(j+1)!.
inline double kernel_series_coeff(int j) {
  double num = std::ldexp(1.0, j + 1) - 1.0;
  double c = num / std::tgamma(static_cast<double>(j + 2));
  return (j & 1) ? -c : c;
}

constexpr double kKernelSeriesRadius = 0.5;

// ln(sinh(x)/x), even in x, stable over the whole real line.
inline double log_sinhc(double x) {
  x = std::abs(x);
  if (x < 0.5) {
    double x2 = x * x;
    // sinh(x)/x - 1 = x^2/6 (1 + x^2/20 (1 + x^2/42 (1 + x^2/72 (1 + x^2/110))))
    double s = x2 / 6.0 *
               (1.0 + x2 / 20.0 *
                          (1.0 + x2 / 42.0 *
                                     (1.0 + x2 / 72.0 * (1.0 + x2 / 110.0))));
    return std::log1p(s);
  }
  if (x < 350.0) return std::log(std::sinh(x) / x);
  return x - std::log(2.0 * x) + std::log1p(-std::exp(-2.0 * x));
}

}  // namespace detail

// K(z) for real or complex z; series near 0, direct elsewhere.
template <class T>
T spacing_kernel(T z) {
  if (std::abs(z) < detail::kKernelSeriesRadius) {
    T acc(0);
    T zp(1);
    for (int j = 0; j <= 20; ++j) {
      acc += detail::kernel_series_coeff(j) * zp;
      zp *= z;
    }
    return acc;
  }
  return (std::exp(-z) - std::exp(-2.0 * z)) / z;
}

// k-th derivative of K at real z, k <= 6.
inline double spacing_kernel_deriv(int k, double z) {
  if (k == 0) return spacing_kernel(z);
  if (k < 0 || k > 6) throw std::domain_error("spacing_kernel_deriv: k out of range");
  if (std::abs(z) < detail::kKernelSeriesRadius) {
    double acc = 0.0;
    double zp = 1.0;
    for (int j = k; j <= 24; ++j) {
      double c = detail::kernel_series_coeff(j);
      for (int i = 0; i < k; ++i) c *= (j - i);
      acc += c * zp;
      zp *= z;
    }
    return acc;
  }
  // Leibniz on (e^{-z} - e^{-2z}) * z^{-1}.
  double acc = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) binom *= static_cast<double>(k - j + 1) / j;
    double uj = (((j & 1) ? -1.0 : 1.0) * std::exp(-z)) -
                (std::pow(-2.0, j) * std::exp(-2.0 * z));
    // d^{k-j}/dz^{k-j} z^{-1} = (-1)^{k-j} (k-j)! z^{-(k-j+1)}
    int r = k - j;
    double vk = (r & 1 ? -1.0 : 1.0) * std::tgamma(static_cast<double>(r + 1)) /
                std::pow(z, r + 1);
    acc += binom * uj * vk;
  }
  return acc;
}

// 1/rho as a function of pressure (the equation of state before
// inversion).  Removable singularity at p = 0 is handled by the series
// ratio; the sign-adaptive form never overflows.
inline double inverse_density_from_pressure(double p) {
  if (std::isnan(p)) throw std::domain_error("inverse_density: p is NaN");
  if (p == std::numeric_limits<double>::infinity()) return 1.0;
  if (p == -std::numeric_limits<double>::infinity()) return 2.0;
  if (std::abs(p) < 1e-3) {
    // 1/rho = N(p)/D(p), N = sum (-1)^k (2k+3) p^k/(k+2)!,
    //                    D = sum (-1)^k p^k/(k+1)!
    double num = 0.0, den = 0.0, pp = 1.0;
    for (int k = 0; k <= 8; ++k) {
      double fk = std::tgamma(static_cast<double>(k + 2));
      double sign = (k & 1) ? -1.0 : 1.0;
      den += sign * pp / fk;
      num += sign * (2 * k + 3) * pp / (fk * (k + 2));
      pp *= p;
    }
    return num / den;
  }
  if (p > 0) {
    double e = std::exp(-p);
    return 1.0 / p + (1.0 - 2.0 * e) / (1.0 - e);
  }
  double e = std::exp(p);
  return 1.0 / p + (e - 2.0) / (e - 1.0);
}

// Density rho(p) in (1/2, 1); +inf and -inf sentinels give the limiting
// close-packed and loosest-parking densities 1 and 1/2.
inline double density_from_pressure(double p) {
  return 1.0 / inverse_density_from_pressure(p);
}

// d(1/rho)/dp = 1/(4 sinh^2(p/2)) - 1/p^2, strictly negative.
inline double inverse_density_derivative(double p) {
  double a = std::abs(p);
  if (a < 1e-3) {
    double p2 = p * p;
    return -1.0 / 12.0 + p2 / 240.0 - p2 * p2 / 6048.0;
  }
  if (a > 700.0) return -1.0 / (p * p);
  double s = 2.0 * std::sinh(0.5 * p);
  return 1.0 / (s * s) - 1.0 / (p * p);
}

// Inverse of density_from_pressure, |rho(p) - rho| < 1e-13.  Bracketing
// plus safeguarded Newton; rho(p) is strictly increasing (asserted
// numerically in the tests), so the bracket is reliable.
inline double pressure_from_density(double rho) {
  if (!(rho > 0.5 && rho < 1.0)) {
    throw std::domain_error(
        "pressure_from_density: density must lie strictly inside (1/2, 1)");
  }
  const double v = 1.0 / rho;  // target 1/rho in (1, 2)
  double p0;
  if (v < 1.4) {
    p0 = 1.0 / (v - 1.0);
  } else if (v > 1.6) {
    p0 = 1.0 / (v - 2.0);
  } else {
    p0 = 0.0;
  }
  // Expand a bracket [plo, phi] with F(plo) > 0 > F(phi), F = 1/rho(p) - v
  // (decreasing in p).
  double width = std::max(1.0, std::abs(p0) * 0.5);
  double plo = p0 - width, phi = p0 + width;
  for (int i = 0; i < 200 && inverse_density_from_pressure(plo) - v <= 0; ++i) {
    plo -= width;
    width *= 2;
  }
  width = std::max(1.0, std::abs(p0) * 0.5);
  for (int i = 0; i < 200 && inverse_density_from_pressure(phi) - v >= 0; ++i) {
    phi += width;
    width *= 2;
  }

  double p = std::min(std::max(p0, plo), phi);
  for (int it = 0; it < 200; ++it) {
    double f = inverse_density_from_pressure(p) - v;
    if (std::abs(f) < 2e-16 * std::abs(v)) return p;
    if (f > 0) {
      plo = p;
    } else {
      phi = p;
    }
    double step = -f / inverse_density_derivative(p);
    double pn = p + step;
    if (!(pn > plo && pn < phi)) pn = 0.5 * (plo + phi);
    if (pn == p) return p;
    p = pn;
  }
  return p;
}

// Gibbs potential per particle, -ln K(p) = 3p/2 - ln(sinh(p/2)/(p/2)).
inline double gibbs_per_particle(double p) {
  if (!std::isfinite(p)) throw std::domain_error("gibbs_per_particle: p must be finite");
  return 1.5 * p - detail::log_sinhc(0.5 * p);
}

// Free energy per particle at density rho: f = -p/rho + g(p).
inline double free_energy_per_particle(double rho) {
  double p = pressure_from_density(rho);
  return -p * (1.0 / rho) + gibbs_per_particle(p);
}

// Large-deviation rate of the parking probability for uniform points:
// I(rho) = 1 - p/rho - ln rho - ln K(p).
inline double parking_rate(double rho) {
  double p = pressure_from_density(rho);
  return 1.0 - p / rho - std::log(rho) + gibbs_per_particle(p);
}

// A matched (p, rho) state point with its potentials.
struct ThermoState {
  double p = 0.0;
  double rho = 2.0 / 3.0;
  double gibbs = 0.0;        // Gibbs potential per particle
  double free_energy = 0.0;  // free energy per particle

  static ThermoState from_pressure(double p) {
    if (std::isnan(p)) throw std::domain_error("ThermoState: p is NaN");
    ThermoState s;
    s.p = p;
    s.rho = density_from_pressure(p);
    s.gibbs = std::isfinite(p) ? gibbs_per_particle(p)
                               : std::numeric_limits<double>::infinity() *
                                     (p > 0 ? 1.0 : -1.0);
    s.free_energy = std::isfinite(p) ? -p / s.rho + s.gibbs : s.gibbs;
    return s;
  }

  static ThermoState from_density(double rho) {
    return from_pressure(pressure_from_density(rho));
  }
};

struct UnitSystem {
  double kT = 1.0;   // temperature scale
  double ell = 1.0;  // rod length
};

struct PhysicalState {
  double pressure = 0.0;
  double density = 0.0;
};

// Maps a reduced state to physical units: p_phys * ell / kT = p_reduced,
// rho_phys = rho_reduced / ell.
inline PhysicalState rescale(const ThermoState& s, const UnitSystem& u) {
  if (!(u.kT > 0.0) || !(u.ell > 0.0)) {
    throw std::domain_error("rescale: kT and ell must be positive");
  }
  return {s.p * u.kT / u.ell, s.rho / u.ell};
}

}  // namespace hardrods
