#include <doctest.h>

#include <cmath>

#include "bflab/errors.hpp"
#include "bflab/evolve.hpp"
#include "bflab/spectral.hpp"
#include "bflab/validation.hpp"
#include "test_util.hpp"

using namespace bflab;

TEST_CASE("solver configuration snaps and sorts sample times") {
  const auto c = SolverConfig::make(1e-3, 0.1, {0.1, 0.02, 0.0200004, 0.0});
  CHECK(c.step_count() == 100);
  REQUIRE(c.sample_times().size() == 3);
  CHECK(c.sample_steps() == std::vector<long>{0, 20, 100});
  CHECK(c.max_snap_distance() == doctest::Approx(4e-7).epsilon(1e-3));
  CHECK_THROWS_AS(SolverConfig::make(0.0, 1.0, {}), ConfigError);
  CHECK_THROWS_AS(SolverConfig::make(1e-3, -1.0, {}), ConfigError);
  CHECK_THROWS_AS(SolverConfig::make(1e-3, 1.0, {1.5}), ConfigError);
  CHECK_THROWS_AS(SolverConfig::make(0.5, 0.1, {}), ConfigError);
  CHECK_NOTHROW(SolverConfig::make(1e-3, 0.0, {0.0}));
}

TEST_CASE("zero state is a fixed point") {
  const Grid g = Grid::make(1.0, 32);
  const State z{Field::zero(g), Field::zero(g)};
  const auto traj = evolve(BFamilyParams::case_i(2), z, SolverConfig::make(0.01, 0.1, {0.0, 0.1}));
  REQUIRE(traj.samples.size() == 2);
  CHECK(testutil::max_abs(traj.samples[1].state.u.samples()) == 0.0);
  CHECK(traj.max_cfl_number == 0.0);
}

TEST_CASE("trajectory lookup by time") {
  const Grid g = smooth_test_grid();
  const auto traj = evolve(BFamilyParams::case_i(2), smooth_test_state(g), SolverConfig::make(0.01, 0.1, {0.0, 0.05}));
  CHECK(traj.at(0.05).step == 5);
  CHECK(traj.at(0.0).step == 0);
  CHECK_THROWS_AS(traj.at(0.07), std::out_of_range);
}

TEST_CASE("RK4 Richardson self-convergence") {
  const auto r = rk4_richardson(BFamilyParams::case_i(2));
  CHECK(r.local_ratio == doctest::Approx(32).epsilon(0.15));
  CHECK(r.global_ratio >= 12.0);
  CHECK(r.global_ratio <= 20.0);
  CHECK(r.global_order >= 3.5);
  CHECK(r.global_order <= 4.5);
  const auto r2 = rk4_richardson(BFamilyParams::case_ii(3));
  CHECK(r2.global_order >= 3.5);
  CHECK(r2.global_order <= 4.5);
}

TEST_CASE("2CH energy and density mass are conserved") {
  const Grid g = smooth_test_grid();
  const auto traj = evolve(BFamilyParams::case_i(2), smooth_test_state(g), SolverConfig::make(1e-3, 1.0, {0.5, 1.0}));
  REQUIRE(traj.max_energy_drift.has_value());
  CHECK(*traj.max_energy_drift <= 1e-8);
  CHECK(traj.max_rho_mass_drift <= 1e-10);
  const auto& first = traj.samples.front().conserved;
  const auto& last = traj.samples.back().conserved;
  CHECK(last.momentum_mass == doctest::Approx(first.momentum_mass).epsilon(1e-12));
}

TEST_CASE("density mass is conserved outside the 2CH sub-case") {
  const Grid g = smooth_test_grid();
  const auto traj = evolve(BFamilyParams::case_ii(3), smooth_test_state(g), SolverConfig::make(1e-3, 0.5, {0.5}));
  CHECK(traj.max_rho_mass_drift <= 1e-10);
  CHECK_FALSE(traj.max_energy_drift.has_value());
}

TEST_CASE("CFL guard and blow-up abort with the offending time") {
  const Grid g = Grid::make(1.0, 64);
  const Field big = Field::from_function(g, [](double x) { return 50.0 * std::cos(3.14159 * x); });
  const State st{big, Field::zero(g)};
  try {
    evolve(BFamilyParams::case_i(2), st, SolverConfig::make(0.01, 0.1, {0.1}));
    FAIL("expected NumericalAbort");
  } catch (const NumericalAbort& e) {
    CHECK(e.time() == 0.0);
  }
  const State nan_state{Field::constant(g, NAN), Field::zero(g)};
  CHECK_THROWS_AS(rk4_step(BFamilyParams::case_i(2), nan_state, 1e-3), NumericalAbort);
}
