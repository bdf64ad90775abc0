#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bflab/rate_fit.hpp"

using namespace bflab;

TEST_CASE("rate fits of exact power laws") {
  std::vector<std::pair<double, double>> a, b, c;
  for (int n = 4; n <= 8; ++n) {
    a.emplace_back(n, std::exp2(-n));
    b.emplace_back(n, 4 * std::exp2(-n / 2.0));
    c.emplace_back(n, 3.0);
  }
  const auto fa = fit_rate(a);
  CHECK(fa.slope == doctest::Approx(-1.0));
  CHECK(fa.residual < 1e-14);
  CHECK(fa.points == 5);
  const auto fb = fit_rate(b);
  CHECK(fb.slope == doctest::Approx(-0.5));
  CHECK(fb.intercept == doctest::Approx(2.0));
  CHECK(fit_rate(c).slope == doctest::Approx(0.0));
}

TEST_CASE("power-law exponent in t") {
  std::vector<std::pair<double, double>> tv;
  for (double t : {0.02, 0.04, 0.06, 0.08, 0.1}) tv.emplace_back(t, 7 * t * t);
  CHECK(fit_power_law(tv).slope == doctest::Approx(2.0));
}

TEST_CASE("rate fit input validation") {
  const std::vector<std::pair<double, double>> two{{1, 1}, {2, 2}};
  CHECK_THROWS_AS(fit_rate(two), std::invalid_argument);
  const std::vector<std::pair<double, double>> nonpos{{1, 1}, {2, 0}, {3, 1}};
  CHECK_THROWS_AS(fit_rate(nonpos), std::invalid_argument);
  const std::vector<std::pair<double, double>> same_x{{1, 1}, {1, 2}, {1, 3}};
  CHECK_THROWS_AS(least_squares(same_x), std::invalid_argument);
}
