#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hardrods/paircorr.hpp"
#include "hardrods/spectral.hpp"
#include "testutil.hpp"

using namespace hardrods;

namespace {
// 50-digit oracle: single admissible term at (p, x) = (3, 5/2) is m = 2,
// W(3)^2 e^{-7.5} u_2(1/2) / rho(3).
constexpr double kG3x25 = 1.42448179821425440382764;
}  // namespace

TEST_CASE("hard core and first plateau") {
  CHECK(g_point(5.0, BigRational(1, 2)) == 0.0);
  for (int k = 0; k < 20; ++k) {
    CHECK(g_point(-3.0, BigRational(k, 20)) == 0.0);  // [0, 1) scan
  }
  // at p = 0 the plateau value is 1/rho(0) = 3/2 exactly
  for (int k = 1; k < 10; ++k) {
    BigRational x = BigRational(1) + BigRational(k, 10);
    CHECK(g_point(0.0, x) == Catch::Approx(1.5).margin(1e-13));
  }
  CHECK(g_point(0.0, 1.5) == 1.5);
}

TEST_CASE("negative separations are rejected") {
  CHECK_THROWS_AS(g_point(1.0, -0.5), std::domain_error);
  CHECK_THROWS_WITH(g_point(1.0, BigRational(-1)),
                    Catch::Matchers::ContainsSubstring("g(-x) = g(x)"));
}

TEST_CASE("one-term point against the 50-digit oracle") {
  CHECK(g_point(3.0, BigRational(5, 2)) == Catch::Approx(kG3x25).epsilon(1e-13));
}

TEST_CASE("long-distance limit") {
  CHECK(g_point(2.0, BigRational(40)) == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("the m-sum is exactly the finite support sum") {
  // recompute g by brute accumulation over every admissible m
  for (double p : {0.0, 2.5, -4.0}) {
    for (BigRational x : {BigRational(7, 2), BigRational(12), BigRational(49, 4)}) {
      double rho = density_from_pressure(p);
      double log_w = gibbs_per_particle(p);
      double xd = to_double(x);
      ExtReal sum = ExtReal::zero();
      for (unsigned m = 1; m <= static_cast<unsigned>(xd) + 2; ++m) {
        ExtReal u;
        if (m == 1) {
          u = (x >= 1 && x < 2) ? ExtReal::one() : ExtReal::zero();
        } else {
          u = irwin_hall(m, x - BigRational(static_cast<int>(m)));
        }
        if (u.is_zero()) continue;
        sum += u * ExtReal::from_ln(m * log_w - p * xd);
      }
      double manual = (sum / rho).to_double();
      CHECK(g_point(p, x) == Catch::Approx(manual).epsilon(1e-13));
    }
  }
}

TEST_CASE("grid at p = 0: plateau, jumps at the breakpoints, right limits") {
  GridFunction grid = g_grid(0.0, 6.0, BigRational(1, 100));
  REQUIRE(grid.size() == 601);
  for (std::size_t i = 0; i < 100; ++i) CHECK(grid.values[i] == 0.0);
  for (std::size_t i = 100; i < 200; ++i) {  // [1, 2): right limit at 1 included
    CHECK(grid.values[i] == Catch::Approx(1.5).margin(1e-13));
  }
  CHECK(grid.values[200] == 0.0);  // right limit at the m = 1 cutoff
  CHECK(grid.values[250] == Catch::Approx(0.75).margin(1e-13));   // 1.5 u_2(1/2)
  CHECK(grid.values[299] == Catch::Approx(1.485).margin(1e-13));  // 1.5 u_2(0.99)
  // u_2 is continuous at x = 3, no jump there
  CHECK(grid.values[300] == Catch::Approx(1.5).margin(1e-13));
}

TEST_CASE("grid guards") {
  CHECK_THROWS_AS(g_grid(1.0, 300.0, BigRational(1, 100)), std::invalid_argument);
  CHECK_THROWS_AS(g_grid(1.0, 5.0, BigRational(1, 100000)), std::invalid_argument);
  CHECK_THROWS_AS(g_grid(1.0, 5.0, BigRational(0)), std::invalid_argument);
  CHECK_THROWS_AS(g_grid(1.0, 5.0, BigRational(1, 9999999)), std::invalid_argument);
}

TEST_CASE("h is g shifted down by one") {
  GridFunction h = h_grid(4.0, 10.0, BigRational(1, 50));
  GridFunction g = g_grid(4.0, 10.0, BigRational(1, 50));
  REQUIRE(h.size() == g.size());
  CHECK(h.values[25] == -1.0);  // inside the hard core
  for (std::size_t i = 0; i < h.size(); i += 17) {
    CHECK(h.values[i] == Catch::Approx(g.values[i] - 1.0).margin(1e-15));
  }
  // h -> 0 at large x
  CHECK(std::abs(h.values[h.size() - 1]) < 1e-3);
}

TEST_CASE("mass concentrates on the lattice as |p| grows") {
  // near p = +inf g approaches a unit-spacing comb; near -inf the comb
  // sits on even integers with double weight
  GridFunction plus = g_grid(60.0, 6.0, BigRational(1, 200));
  GridFunction minus = g_grid(-60.0, 6.0, BigRational(1, 200));
  auto mass_near = [&](const GridFunction& g, double center, double halfwidth) {
    double acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (std::abs(g.x(i) - center) <= halfwidth) acc += g.values[i] * g.step_d();
    }
    return acc;
  };
  // p = +60: every integer neighborhood carries ~1 rod
  for (double c : {1.0, 2.0, 3.0, 4.0}) {
    CHECK(mass_near(plus, c + 0.02, 0.15) == Catch::Approx(1.0).margin(0.2));
  }
  // midpoints are empty
  CHECK(mass_near(plus, 2.5, 0.2) < 1e-6);
  // p = -60: mass near even integers ~ 2, none near odd
  CHECK(mass_near(minus, 2.0 - 0.02, 0.15) == Catch::Approx(2.0).margin(0.4));
  CHECK(mass_near(minus, 4.0 - 0.04, 0.2) == Catch::Approx(2.0).margin(0.4));
  CHECK(mass_near(minus, 3.0, 0.3) < 1e-6);
}

TEST_CASE("tail fit on a synthetic exponentially damped cosine") {
  GridFunction h;
  h.x0 = 0.0;
  h.step = BigRational(1, 100);
  h.values.resize(4001);
  for (std::size_t i = 0; i <= 4000; ++i) {
    double x = 0.01 * static_cast<double>(i);
    h.values[i] = std::exp(-x / 4.0) * std::cos(2.0 * M_PI * x);
  }
  TailFit fit = fit_tail(h, 2.0, 38.0);
  CHECK(fit.inv_xi == Catch::Approx(0.25).margin(1e-3));
  CHECK(fit.period == Catch::Approx(1.0).margin(1e-3));
  CHECK(fit.n_maxima >= 5);
}

TEST_CASE("tail fit rejects windows without enough extrema") {
  GridFunction h;
  h.x0 = 0.0;
  h.step = BigRational(1, 100);
  h.values.assign(1001, 0.5);  // flat: no strict maxima
  CHECK_THROWS_AS(fit_tail(h, 0.0, 10.0), std::runtime_error);
  CHECK_THROWS_AS(fit_tail(h, 8.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(fit_tail(h, 0.0, 50.0), std::invalid_argument);
}

TEST_CASE("fitted decay and period match the dominant pole at |p| = 10") {
  {
    CorrelationSummary s = correlation_summary(10.0);
    GridFunction h = h_grid(10.0, 80.0, BigRational(1, 100));
    TailFit fit = fit_tail(h, 2.0 * s.xi, 80.0);
    CHECK(fit.inv_xi ==
          Catch::Approx(-s.dominant.lambda.real()).epsilon(0.05));
    CHECK(fit.period == Catch::Approx(s.period).epsilon(0.05));
  }
  {
    CorrelationSummary s = correlation_summary(-10.0);
    GridFunction h = h_grid(-10.0, 190.0, BigRational(1, 50));
    TailFit fit = fit_tail(h, 2.0 * s.xi, 190.0);
    CHECK(fit.inv_xi ==
          Catch::Approx(-s.dominant.lambda.real()).epsilon(0.05));
    CHECK(fit.period == Catch::Approx(s.period).epsilon(0.05));
  }
}

TEST_CASE("sign-alternating tail envelope at moderate pressure") {
  GridFunction h = h_grid(6.0, 30.0, BigRational(1, 100));
  // collect signs of h at successive |h| maxima beyond x = 6
  std::vector<int> signs;
  for (std::size_t i = 601; i + 1 < h.size(); ++i) {
    double c = std::abs(h.values[i]);
    if (c > std::abs(h.values[i - 1]) && c > std::abs(h.values[i + 1]) && c > 1e-10) {
      signs.push_back(h.values[i] > 0 ? 1 : -1);
    }
  }
  REQUIRE(signs.size() >= 8);
  int alternations = 0;
  for (std::size_t i = 1; i < signs.size(); ++i) {
    if (signs[i] != signs[i - 1]) ++alternations;
  }
  CHECK(alternations >= static_cast<int>(signs.size()) - 2);
}

TEST_CASE("correlation integral stabilizes once the tail is crossed") {
  const double p = 5.0;
  CorrelationSummary s = correlation_summary(p);
  testutil::GSampling gs = testutil::sample_g(p, 40, 100);
  // integral of h over [0, X] as X grows: Cauchy beyond ~10 xi
  testutil::GSampling gs_short = testutil::sample_g(p, 25, 100);
  double full = testutil::integral_h(gs);
  double shorter = testutil::integral_h(gs_short);
  CHECK(25.0 > 10.0 * s.xi);
  CHECK(std::abs(full - shorter) < 1e-6);
}
