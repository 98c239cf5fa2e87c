#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "hardrods/irwin_hall.hpp"
#include "hardrods/rng.hpp"
#include "testutil.hpp"

using namespace hardrods;

TEST_CASE("density values at hand-checkable points") {
  CHECK(irwin_hall(1u, BigRational(1, 2)).to_double() == 1.0);
  CHECK(irwin_hall(3u, -0.1).to_double() == 0.0);
  CHECK(irwin_hall(2u, BigRational(1)).to_double() == 1.0);
  // exact rationals
  CHECK(irwin_hall_rational(3, BigRational(3, 2)) == BigRational(3, 4));
  CHECK(irwin_hall_rational(4, BigRational(2)) == BigRational(2, 3));
  CHECK(irwin_hall_rational(2, BigRational(1)) == BigRational(1));
}

TEST_CASE("u3(1.5) against a numerical double convolution") {
  // u2 by trapezoid convolution of two uniform densities (step 1e-4),
  // then one more convolution evaluated at t = 1.5.
  const int q = 10000;
  const double h = 1.0 / q;
  std::vector<double> u2(2 * q + 1, 0.0);
  for (int k = 0; k <= 2 * q; ++k) {
    double t = k * h;
    double acc = 0.0;
    for (int j = 0; j <= q; ++j) {
      double y = j * h;
      double v = (t - y > 0.0 && t - y < 1.0) ? 1.0 : 0.0;
      acc += (j == 0 || j == q) ? 0.5 * v : v;
    }
    u2[k] = acc * h;
  }
  double t = 1.5;
  double acc = 0.0;
  for (int j = 0; j <= q; ++j) {
    double y = j * h;
    double v = u2[static_cast<int>(std::lround((t - y) * q))];
    acc += (j == 0 || j == q) ? 0.5 * v : v;
  }
  double oracle = acc * h;
  CHECK(oracle == Catch::Approx(0.75).margin(1e-3));
  CHECK(irwin_hall(3u, BigRational(3, 2)).to_double() == 0.75);
}

TEST_CASE("u2(1.0) against the direct convolution integral") {
  // integral_0^1 1_{0 < 1-y < 1} dy evaluated by midpoint rule.
  const int q = 100000;
  double acc = 0.0;
  for (int j = 0; j < q; ++j) {
    double y = (j + 0.5) / q;
    acc += (1.0 - y > 0.0 && 1.0 - y < 1.0) ? 1.0 : 0.0;
  }
  CHECK(acc / q == Catch::Approx(1.0).margin(1e-4));
  CHECK(irwin_hall(2u, 1.0).to_double() == 1.0);
}

TEST_CASE("shifted form: sums of uniform(1,2) spacings") {
  CHECK(irwin_hall_shifted(1u, BigRational(3, 2)).to_double() == 1.0);
  CHECK(irwin_hall_shifted(4u, 9.0).to_double() == 0.0);
  CHECK(irwin_hall_shifted(4u, 6.0).to_double() ==
        Catch::Approx(2.0 / 3.0).epsilon(1e-15));
  // support is (m, 2m)
  CHECK(irwin_hall_shifted(4u, 4.0).is_zero());
  CHECK(irwin_hall_shifted(4u, 8.0).is_zero());
}

TEST_CASE("log form") {
  auto l1 = irwin_hall_log(1, BigRational(3, 2));
  CHECK(l1.positive);
  CHECK(l1.log_value == 0.0);
  auto l2 = irwin_hall_log(4, 9.0);
  CHECK_FALSE(l2.positive);
  CHECK(l2.log_value == -std::numeric_limits<double>::infinity());
  auto l3 = irwin_hall_log(4, 6.0);
  CHECK(l3.positive);
  CHECK(l3.log_value == Catch::Approx(std::log(2.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(irwin_hall(0u, 0.5), std::domain_error);
  CHECK_THROWS_AS(irwin_hall(3u, std::numeric_limits<double>::infinity()),
                  std::domain_error);
  CHECK_THROWS_AS(irwin_hall_log(0, 1.0), std::domain_error);
}

TEST_CASE("symmetry u_m(t) = u_m(m-t) holds exactly, without reflection") {
  for (unsigned m : {2u, 3u, 7u, 20u, 45u}) {
    for (int k = 1; k < 17; ++k) {
      BigRational t = BigRational(static_cast<int>(m)) * BigRational(k, 17);
      BigRational a = irwin_hall_rational(m, t);
      BigRational b = irwin_hall_rational(m, BigRational(static_cast<int>(m)) - t);
      CHECK(a == b);
      // the direct alternating sum (no reflection) agrees exactly
      CHECK(testutil::irwin_hall_direct(m, t) == a);
    }
  }
}

TEST_CASE("normalization: quadrature over the support equals 1") {
  // Step 1e-3.  Midpoint for the m = 1 indicator (no endpoint reads),
  // composite Simpson for the continuous m >= 2 densities.
  CHECK(testutil::midpoint_irwin_hall(1, 1000) == Catch::Approx(1.0).margin(1e-10));
  std::vector<double> err(61, 0.0);
  detail::parallel_for(59, [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t i = b; i < e; ++i) {
      unsigned m = static_cast<unsigned>(i) + 2;
      auto lattice = testutil::irwin_hall_lattice(m, 1000);
      err[m] = std::abs(testutil::simpson_lattice(lattice, 1000) - 1.0);
    }
  });
  for (unsigned m = 2; m <= 60; ++m) {
    INFO("m = " << m);
    CHECK(err[m] < 1e-8);
  }
}

TEST_CASE("lattice helper agrees with the reference evaluator") {
  for (unsigned m : {2u, 9u, 33u, 60u}) {
    auto lattice = testutil::irwin_hall_lattice(m, 50);
    for (unsigned k = 1; k < m * 50; k += 37) {
      double ref = irwin_hall(m, BigRational(k, 50)).to_double();
      CHECK(lattice[k] == ref);
    }
  }
}

TEST_CASE("recursion: u_{m+1}(t) equals the unit-average of u_m") {
  for (unsigned m = 1; m <= 30; ++m) {
    for (BigRational t : {BigRational(1, 2), BigRational(3, 8),
                          BigRational(static_cast<int>(m) + 1, 2),
                          BigRational(static_cast<int>(m) * 8 - 3, 8)}) {
      if (t <= 0 || t >= BigRational(static_cast<int>(m) + 1)) continue;
      double lhs = irwin_hall(m + 1, t).to_double();
      double rhs = testutil::recursion_quadrature(m, t, 400);
      INFO("m = " << m << ", t = " << to_double(t));
      CHECK(lhs == Catch::Approx(rhs).margin(1e-8));
    }
  }
}

TEST_CASE("direct Monte Carlo histogram oracle, m <= 12") {
  // 1e7 samples of 12 partial sums, bins of width 0.01; analytic bin
  // probabilities from midpoint values.  With thousands of bins a few
  // 3-sigma excursions are expected; 99% within 3 sigma, all within 5.
  const long long samples = 10000000;
  const int q = 100;  // bins per unit
  const unsigned m_top = 12;
  std::vector<std::vector<std::uint32_t>> counts(m_top + 1);
  for (unsigned m = 1; m <= m_top; ++m) counts[m].assign(m * q, 0);

  const unsigned workers = detail::thread_count();
  std::vector<decltype(counts)> local(workers, counts);
  detail::parallel_for(static_cast<std::size_t>(samples),
                       [&](std::size_t b, std::size_t e, unsigned w) {
    auto& mine = local[w];
    for (std::size_t s = b; s < e; ++s) {
      CounterRng rng(2024, s);
      double sum = 0.0;
      for (unsigned m = 1; m <= m_top; ++m) {
        sum += rng.next_unit();
        auto bin = static_cast<std::size_t>(sum * q);
        if (bin < mine[m].size()) ++mine[m][bin];
      }
    }
  });
  for (const auto& mine : local) {
    for (unsigned m = 1; m <= m_top; ++m) {
      for (std::size_t i = 0; i < counts[m].size(); ++i) counts[m][i] += mine[m][i];
    }
  }

  long long total_bins = 0, beyond3 = 0;
  double worst = 0.0;
  for (unsigned m = 1; m <= m_top; ++m) {
    for (std::size_t i = 0; i < counts[m].size(); ++i) {
      BigRational mid(2 * static_cast<long long>(i) + 1, 2 * q);
      double qprob = irwin_hall(m, mid).to_double() / q;
      double se = std::sqrt(qprob * (1.0 - qprob) / samples);
      double freq = static_cast<double>(counts[m][i]) / samples;
      double z = se > 0.0 ? std::abs(freq - qprob) / se
                          : (counts[m][i] ? 1e9 : 0.0);
      ++total_bins;
      if (z > 3.0) ++beyond3;
      worst = std::max(worst, z);
    }
  }
  CHECK(static_cast<double>(beyond3) <= 0.01 * static_cast<double>(total_bins));
  CHECK(worst < 5.0);
}

TEST_CASE("fast double path tracks the exact path below m = 25") {
  for (unsigned m = 1; m <= 25; ++m) {
    for (int k = 1; k < 8; ++k) {
      double t = m * k / 8.0;
      double ref = irwin_hall(m, BigRational(static_cast<int>(m) * k, 8)).to_double();
      CHECK(irwin_hall_fast(m, t) == Catch::Approx(ref).margin(1e-9));
    }
  }
}

TEST_CASE("deep tail values keep their exponent") {
  ExtReal v = irwin_hall(200u, BigRational(1, 100));
  CHECK(v.to_double() == 0.0);  // below double range
  CHECK_FALSE(v.is_zero());
  // u_m(t) = t^{m-1}/(m-1)! on (0,1)
  double expected = -199.0 * std::log(100.0) - std::lgamma(200.0);
  CHECK(v.ln() == Catch::Approx(expected).epsilon(1e-12));
}
