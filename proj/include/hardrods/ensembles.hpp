#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hardrods/bigrational.hpp"
#include "hardrods/eos.hpp"
#include "hardrods/extfloat.hpp"
#include "hardrods/grid.hpp"
#include "hardrods/irwin_hall.hpp"
#include "hardrods/parallel.hpp"
#include "hardrods/rng.hpp"

// Monte Carlo side of the model: spacing samplers for the isobaric and
// canonical ensembles, the empirical pair-distribution estimator built
// from partial sums of spacings, and parking probabilities for uniform
// points (exact formula and direct simulation).

namespace hardrods {

enum class EnsembleKind { isobaric, canonical };

struct SpacingChain {
  std::vector<double> spacings;  // each in [1, 2]
  EnsembleKind kind = EnsembleKind::isobaric;
  double p = 0.0;   // isobaric tag
  double l = 0.0;   // canonical tag: sum of spacings
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  double sum() const {
    double s = 0.0;
    for (double v : spacings) s += v;
    return s;
  }
};

// n independent draws from the single-spacing density ~ e^{-p s} on
// [1, 2] by inverse CDF; p = 0 degenerates to uniform(1, 2).
inline SpacingChain sample_isobaric(double p, int n, std::uint64_t seed,
                                    std::uint64_t stream_id) {
  if (n < 1) throw std::invalid_argument("sample_isobaric: n must be >= 1");
  if (!std::isfinite(p)) throw std::domain_error("sample_isobaric: p must be finite");
  SpacingChain chain;
  chain.kind = EnsembleKind::isobaric;
  chain.p = p;
  chain.seed = seed;
  chain.stream_id = stream_id;
  chain.spacings.resize(static_cast<std::size_t>(n));
  CounterRng rng(seed, stream_id);
  if (p == 0.0) {
    for (double& s : chain.spacings) s = 1.0 + rng.next_unit();
  } else {
    const double c = -std::expm1(-p);  // 1 - e^{-p}
    for (double& s : chain.spacings) {
      // s = -(1/p) ln(e^{-p} - U (e^{-p} - e^{-2p})) in the stable form
      s = 1.0 - std::log1p(-rng.next_unit() * c) / p;
    }
  }
  return chain;
}

// Flat measure on {s in [1,2]^n : sum s = l} by pair-redistribution
// MCMC: a random pair (i, j) is resampled uniformly on the segment
// {s_i + s_j = const} cut by the square [1,2]^2, which preserves both
// the constraint and the flat target.  One sweep = n pair moves.
inline SpacingChain sample_canonical(int n, double l, int sweeps,
                                     std::uint64_t seed, std::uint64_t stream_id) {
  if (n < 2) throw std::invalid_argument("sample_canonical: n must be >= 2");
  double mean = l / n;
  if (!(mean > 1.0 && mean < 2.0)) {
    throw std::domain_error("sample_canonical: infeasible (n, l), need l/n in (1, 2)");
  }
  SpacingChain chain;
  chain.kind = EnsembleKind::canonical;
  chain.l = l;
  chain.seed = seed;
  chain.stream_id = stream_id;
  chain.spacings.assign(static_cast<std::size_t>(n), mean);
  CounterRng rng(seed, stream_id);
  const auto un = static_cast<std::uint64_t>(n);
  const long long moves = static_cast<long long>(sweeps) * n;
  for (long long k = 0; k < moves; ++k) {
    auto i = static_cast<std::size_t>(rng.next_below(un));
    auto j = static_cast<std::size_t>(rng.next_below(un - 1));
    if (j >= i) ++j;
    double t = chain.spacings[i] + chain.spacings[j];
    double lo = std::max(1.0, t - 2.0);
    double hi = std::min(2.0, t - 1.0);
    double si = lo + rng.next_unit() * (hi - lo);
    chain.spacings[i] = si;
    chain.spacings[j] = t - si;
  }
  return chain;
}

// Chain factories for the estimator below; stream_id selects the chain.
struct IsobaricSource {
  double p = 0.0;
  int n = 0;
  std::uint64_t seed = 0;

  double rho() const { return density_from_pressure(p); }
  SpacingChain draw(std::uint64_t stream_id) const {
    return sample_isobaric(p, n, seed, stream_id);
  }
};

struct CanonicalSource {
  int n = 0;
  double l = 0.0;
  int sweeps = 100;  // burn-in from the centered start
  std::uint64_t seed = 0;

  double rho() const { return n / l; }
  SpacingChain draw(std::uint64_t stream_id) const {
    return sample_canonical(n, l, sweeps, seed, stream_id);
  }
};

// Histogram estimate of g from partial sums S_1 + ... + S_m, m <= m_max,
// normalized by rho * bin_width * samples.  Every sample is a fresh
// chain, so partial sums are independent across samples; per-bin counts
// are binomial (bins are narrower than the minimum spacing, so one
// sample hits a bin at most once).
struct EmpiricalG {
  GridFunction grid;                  // bin centers, estimate of g
  std::vector<std::uint64_t> counts;  // raw bin counts
  long long samples = 0;
  double rho = 0.0;
  double bin_width = 0.0;

  // Standard error of grid.values[i] from the binomial counts.
  double stderr_at(std::size_t i) const {
    double q = static_cast<double>(counts[i]) / static_cast<double>(samples);
    double sigma_q = std::sqrt(std::max(q * (1.0 - q), 0.0) /
                               static_cast<double>(samples));
    return sigma_q / (rho * bin_width);
  }
};

template <class Source>
EmpiricalG empirical_g(const Source& source, int m_max, double x_max,
                       double bin_width, long long samples,
                       std::uint64_t stream_base = 0) {
  if (m_max < 1) throw std::invalid_argument("empirical_g: m_max must be >= 1");
  if (!(x_max <= 2.0 * m_max)) {
    throw std::invalid_argument("empirical_g: need x_max <= 2 m_max");
  }
  if (!(bin_width > 0.0) || !(x_max > 0.0)) {
    throw std::invalid_argument("empirical_g: bad bin configuration");
  }
  const auto nbins = static_cast<std::size_t>(std::llround(x_max / bin_width));
  if (std::abs(nbins * bin_width - x_max) > 1e-9) {
    throw std::invalid_argument("empirical_g: bin_width must divide x_max");
  }
  const unsigned workers = detail::thread_count();
  std::vector<std::vector<std::uint64_t>> local(
      workers, std::vector<std::uint64_t>(nbins, 0));
  detail::parallel_for(static_cast<std::size_t>(samples),
                       [&](std::size_t b, std::size_t e, unsigned w) {
    auto& counts = local[w];
    for (std::size_t s = b; s < e; ++s) {
      SpacingChain chain = source.draw(stream_base + s);
      const auto m_lim = std::min<std::size_t>(chain.spacings.size(),
                                               static_cast<std::size_t>(m_max));
      double partial = 0.0;
      for (std::size_t m = 0; m < m_lim; ++m) {
        partial += chain.spacings[m];
        if (partial >= x_max) break;
        ++counts[static_cast<std::size_t>(partial / bin_width)];
      }
    }
  });
  EmpiricalG out;
  out.counts.assign(nbins, 0);
  for (const auto& c : local) {
    for (std::size_t i = 0; i < nbins; ++i) out.counts[i] += c[i];
  }
  out.samples = samples;
  out.rho = source.rho();
  out.bin_width = bin_width;
  out.grid.x0 = 0.5 * bin_width;
  out.grid.step = rational_from_double(bin_width);
  out.grid.values.resize(nbins);
  const double norm = out.rho * bin_width * static_cast<double>(samples);
  for (std::size_t i = 0; i < nbins; ++i) {
    out.grid.values[i] = static_cast<double>(out.counts[i]) / norm;
  }
  return out;
}

// Exact probability that n uniform points on a circle of circumference l
// park (every circular gap in [1, 2]):
//
//   P = (n-1)! u_n(l - n) / l^{n-1},
//
// evaluated as an exact rational when l is rational.
inline BigRational parking_probability_exact_rational(int n, const BigRational& l) {
  if (n < 2) throw std::invalid_argument("parking probability: n must be >= 2");
  if (l <= 0) throw std::domain_error("parking probability: l must be positive");
  BigRational u = irwin_hall_rational(static_cast<unsigned>(n),
                                      l - BigRational(n));
  if (u == 0) return BigRational(0);
  BigRational ln1(boost::multiprecision::pow(numerator(l), static_cast<unsigned>(n - 1)),
                  boost::multiprecision::pow(denominator(l), static_cast<unsigned>(n - 1)));
  return BigRational(detail::factorial_big(static_cast<unsigned>(n - 1))) * u / ln1;
}

inline ExtReal parking_probability_exact(int n, const BigRational& l) {
  return ExtReal::from_rational(parking_probability_exact_rational(n, l));
}

struct McEstimate {
  double estimate = 0.0;
  double stderr = 0.0;
  long long trials = 0;
};

// Direct simulation of the same event: n uniform points on the circle,
// sorted, all n wrap-around gaps checked against [1, 2].
inline McEstimate parking_probability_mc(int n, double l, long long trials,
                                         std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("parking probability: n must be >= 2");
  if (trials < 1) throw std::invalid_argument("parking probability: trials must be >= 1");
  const unsigned workers = detail::thread_count();
  std::vector<std::uint64_t> hits(workers, 0);
  detail::parallel_for(static_cast<std::size_t>(trials),
                       [&](std::size_t b, std::size_t e, unsigned w) {
    std::vector<double> pts(static_cast<std::size_t>(n));
    std::uint64_t local = 0;
    for (std::size_t t = b; t < e; ++t) {
      CounterRng rng(seed, t);
      for (double& x : pts) x = rng.next_unit() * l;
      std::sort(pts.begin(), pts.end());
      bool ok = true;
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double gap = pts[i + 1] - pts[i];
        if (gap < 1.0 || gap > 2.0) {
          ok = false;
          break;
        }
      }
      if (ok) {
        double wrap = l - pts.back() + pts.front();
        ok = wrap >= 1.0 && wrap <= 2.0;
      }
      if (ok) ++local;
    }
    hits[w] += local;
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  McEstimate est;
  est.trials = trials;
  est.estimate = static_cast<double>(total) / static_cast<double>(trials);
  est.stderr = std::sqrt(est.estimate * (1.0 - est.estimate) /
                         static_cast<double>(trials));
  return est;
}

// Combined exact / MC record (the CLI surface for parking probabilities).
struct ParkingProbability {
  int n = 0;
  double l = 0.0;
  double exact = 0.0;
  double mc_estimate = 0.0;
  double mc_stderr = 0.0;
  long long trials = 0;
};

inline ParkingProbability parking_probability(int n, const BigRational& l,
                                              long long trials,
                                              std::uint64_t seed) {
  ParkingProbability out;
  out.n = n;
  out.l = to_double(l);
  out.exact = parking_probability_exact(n, l).to_double();
  McEstimate mc = parking_probability_mc(n, out.l, trials, seed);
  out.mc_estimate = mc.estimate;
  out.mc_stderr = mc.stderr;
  out.trials = trials;
  return out;
}

// Finite-n check of the parking rate: reports -(1/n) ln P_exact(n, n/rho)
// for each requested n next to the limiting rate I(rho).
struct RateTableRow {
  int n = 0;
  double l = 0.0;
  double value = 0.0;  // -(1/n) ln P
};

struct RateTable {
  std::vector<RateTableRow> rows;
  double limit = 0.0;  // parking_rate(rho)
};

inline RateTable rate_function_check(const BigRational& rho,
                                     const std::vector<int>& n_list) {
  double rho_d = to_double(rho);
  if (!(rho_d > 0.5 && rho_d < 1.0)) {
    throw std::domain_error("rate_function_check: rho must lie in (1/2, 1)");
  }
  RateTable table;
  table.limit = parking_rate(rho_d);
  for (int n : n_list) {
    BigRational l = BigRational(n) / rho;
    ExtReal p = parking_probability_exact(n, l);
    if (p.is_zero()) {
      throw std::domain_error("rate_function_check: zero parking probability");
    }
    table.rows.push_back({n, to_double(l), -p.ln() / n});
  }
  return table;
}

}  // namespace hardrods
