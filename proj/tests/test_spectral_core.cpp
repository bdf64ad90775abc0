#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bflab/fft.hpp"
#include "bflab/spectral.hpp"
#include "test_util.hpp"

using namespace bflab;
using testutil::rel_diff;

constexpr double kPi = std::numbers::pi;

TEST_CASE("grid geometry and frequencies") {
  const Grid g = Grid::make(64.0, 65536);
  CHECK(g.size() == 65536);
  CHECK(g.spectrum_size() == 32769);
  CHECK(g.spacing() == doctest::Approx(128.0 / 65536));
  CHECK(g.position(0) == -64.0);
  CHECK(g.frequency(1) == doctest::Approx(kPi / 64));
  CHECK(g.nyquist() == doctest::Approx(kPi * 512));
  CHECK(g.signed_frequency(-3) == doctest::Approx(-3 * kPi / 64));
  // 3k < N is kept
  CHECK(g.dealias_index() == 21845);
  CHECK(3 * g.dealias_index() < g.size());
  CHECK(3 * (g.dealias_index() + 1) >= g.size());
}

TEST_CASE("grid rejects invalid parameters") {
  CHECK_THROWS_WITH_AS(Grid::make(1.0, 15), "N must be even", std::invalid_argument);
  CHECK_THROWS_WITH_AS(Grid::make(1.0, 8), "N must be at least 16", std::invalid_argument);
  CHECK_THROWS_AS(Grid::make(0.0, 64), std::invalid_argument);
  CHECK_THROWS_AS(Grid::make(std::nan(""), 64), std::invalid_argument);
  CHECK_THROWS_AS(require_same_grid(Grid::make(1, 64), Grid::make(1, 128), "test"), std::invalid_argument);
}

TEST_CASE("transform normalization approximates the continuous transform") {
  // Gaussian exp(-x^2/2) has transform sqrt(2 pi) exp(-xi^2/2)
  const Grid g = Grid::make(20.0, 512);
  const Field f = Field::from_function(g, [](double x) { return std::exp(-x * x / 2); });
  for (std::size_t k : {0u, 5u, 20u, 40u}) {
    const double xi = g.frequency(k);
    CHECK(std::abs(f.spectrum()[k] - cplx(std::sqrt(2 * kPi) * std::exp(-xi * xi / 2))) < 1e-12);
  }
}

TEST_CASE("transform round trip and Parseval on random data") {
  const Grid g = Grid::make(5.0, 256);
  const auto samples = testutil::random_vector(g.size(), 42);
  std::vector<cplx> spec(g.spectrum_size());
  std::vector<double> back(g.size());
  fft::forward(g, samples, spec);
  fft::inverse(g, spec, back);
  for (std::size_t j = 0; j < back.size(); ++j) CHECK(back[j] == doctest::Approx(samples[j]).epsilon(1e-12));
  const Field f = Field::from_samples(g, samples);
  double phys = 0.0;
  for (double x : samples) phys += x * x;
  phys *= g.spacing();
  CHECK(spectral_l2_squared(f) == doctest::Approx(phys).epsilon(1e-12));
}

TEST_CASE("derivative of a trigonometric polynomial is exact") {
  const Grid g = Grid::make(kPi, 64);
  const Field f = Field::from_function(g, [](double x) { return std::sin(3 * x) + 0.5 * std::cos(x); });
  const Field want = Field::from_function(g, [](double x) { return 3 * std::cos(3 * x) - 0.5 * std::sin(x); });
  CHECK(rel_diff(derivative(f), want) < 1e-13);
  const Field want2 = Field::from_function(g, [](double x) { return -9 * std::sin(3 * x) - 0.5 * std::cos(x); });
  CHECK(rel_diff(derivative(f, 2), want2) < 1e-13);
  CHECK_THROWS_AS(derivative(f, 0), std::invalid_argument);
}

TEST_CASE("odd derivatives zero the Nyquist mode") {
  const Grid g = Grid::make(kPi, 16);
  const Field f = Field::from_function(g, [](double x) { return std::cos(8 * x); });
  CHECK(testutil::max_abs(derivative(f).samples()) < 1e-14);
  CHECK(std::abs(derivative(f, 2).spectrum()[8]) > 1.0);
}

TEST_CASE("Helmholtz operators are mutually inverse and match closed forms") {
  const Grid g = Grid::make(kPi, 64);
  const Field c2 = Field::from_function(g, [](double x) { return std::cos(2 * x); });
  CHECK(rel_diff(helmholtz_solve(c2), (1.0 / 5.0) * c2) < 1e-14);
  CHECK(rel_diff(helmholtz_apply(c2), 5.0 * c2) < 1e-13);
  const Field s2 = Field::from_function(g, [](double x) { return std::sin(2 * x); });
  CHECK(rel_diff(nonlocal_deriv(c2), (-2.0 / 5.0) * s2) < 1e-14);
  const Field r = testutil::random_band_field(g, 21, 3);
  CHECK(rel_diff(helmholtz_apply(helmholtz_solve(r)), r) < 1e-12);
  CHECK(rel_diff(helmholtz_solve(helmholtz_apply(r)), r) < 1e-12);
}

TEST_CASE("dealiased product equals the exact product for low bands") {
  const Grid g = Grid::make(kPi, 64);
  const Field a = Field::from_function(g, [](double x) { return std::cos(3 * x); });
  const Field b = Field::from_function(g, [](double x) { return std::sin(5 * x); });
  const Field want = Field::from_function(g, [](double x) { return std::cos(3 * x) * std::sin(5 * x); });
  CHECK(rel_diff(multiply_dealiased(a, b), want) < 1e-14);
}

TEST_CASE("dealiased product removes modes above the cutoff") {
  const Grid g = Grid::make(kPi, 48);  // cutoff index 15
  const Field a = Field::from_function(g, [](double x) { return std::cos(10 * x); });
  const Field p = multiply_dealiased(a, a);  // 1/2 + cos(20 x)/2, mode 20 removed
  CHECK(rel_diff(p, Field::constant(g, 0.5)) < 1e-14);
  CHECK(testutil::max_abs(dealias(Field::from_function(g, [](double x) { return std::cos(16 * x); })).samples()) <
        1e-13);
}

TEST_CASE("Lp norms by the rectangle rule") {
  const Grid g = Grid::make(kPi, 128);
  const Field c = Field::from_function(g, [](double x) { return std::cos(x); });
  CHECK(lp_norm(c, 2.0) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  // int cos^4 over a period = 3 pi / 4
  CHECK(lp_norm(c, 4.0) == doctest::Approx(std::pow(3 * kPi / 4, 0.25)).epsilon(1e-13));
  CHECK(lp_norm(Field::constant(g, 2.0), 1.0) == doctest::Approx(4 * kPi));
  CHECK_THROWS_WITH_AS(lp_norm(c, 0.5), "p must be ≥ 1 and finite", std::invalid_argument);
  CHECK_THROWS_AS(lp_norm(c, INFINITY), std::invalid_argument);
  CHECK(integrate(Field::constant(g, 3.0)) == doctest::Approx(6 * kPi));
}

TEST_CASE("field arithmetic keeps both representations consistent") {
  const Grid g = Grid::make(2.0, 64);
  const Field a = testutil::random_band_field(g, 20, 5);
  const Field b = testutil::random_band_field(g, 20, 9);
  const Field s = a + 2.0 * b;
  const Field re = Field::from_samples(g, std::vector<double>(s.samples().begin(), s.samples().end()));
  for (std::size_t k = 0; k < g.spectrum_size(); ++k) CHECK(std::abs(re.spectrum()[k] - s.spectrum()[k]) < 1e-13);
  CHECK(rel_diff(-(a - b), b - a) == 0.0);
  CHECK(a.bandwidth(1e-12) == doctest::Approx(g.frequency(20)));
}

TEST_CASE("operators reject mixed grids") {
  const Field a = Field::zero(Grid::make(1.0, 32));
  const Field b = Field::zero(Grid::make(1.0, 64));
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(multiply_dealiased(a, b), std::invalid_argument);
}
