#include "bflab/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "bflab/evolve.hpp"
#include "bflab/fft.hpp"
#include "bflab/kernels.hpp"
#include "bflab/sequences.hpp"
#include "bflab/spectral.hpp"

namespace bflab {

Grid smooth_test_grid() { return Grid::make(std::numbers::pi, 64); }

State smooth_test_state(const Grid& grid) {
  return {Field::from_function(grid, [](double x) { return 0.4 * std::cos(x) + 0.2 * std::sin(2 * x); }),
          Field::from_function(grid, [](double x) { return 0.3 + 0.1 * std::cos(x); })};
}

namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double state_distance(const State& a, const State& b) {
  return std::max(max_abs((a.u - b.u).samples()), max_abs((a.rho - b.rho).samples()));
}

// Deterministic field with random coefficients on every mode below the
// dealiasing cutoff.
Field random_field(const Grid& grid, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<cplx> spec(grid.spectrum_size());
  for (std::size_t k = 0; k <= grid.dealias_index(); ++k) spec[k] = {dist(gen), dist(gen)};
  return Field::from_spectrum(grid, std::move(spec));
}

double relative(const Field& got, const Field& want) {
  return max_abs((got - want).samples()) / std::max(max_abs(want.samples()), 1e-300);
}

State integrate_to(const BFamilyParams& params, const State& st, double dt, double T) {
  const auto traj = evolve(params, st, SolverConfig::make(dt, T, {T}));
  return traj.samples.back().state;
}

}  // namespace

RichardsonResult rk4_richardson(const BFamilyParams& params) {
  const Grid grid = smooth_test_grid();
  const State st = smooth_test_state(grid);

  auto local_error = [&](double h) {
    const State one = rk4_step(params, st, h);
    const State two = rk4_step(params, rk4_step(params, st, h / 2), h / 2);
    return state_distance(one, two);
  };

  constexpr double kT = 1.0;
  const State a = integrate_to(params, st, 0.04, kT);
  const State b = integrate_to(params, st, 0.02, kT);
  const State c = integrate_to(params, st, 0.01, kT);

  RichardsonResult r;
  r.local_ratio = local_error(0.1) / local_error(0.05);
  r.global_ratio = state_distance(a, b) / state_distance(b, c);
  r.global_order = std::log2(r.global_ratio);
  return r;
}

ExperimentReport run_validation(const ExperimentConfig& cfg) {
  const auto warnings = cfg.validate();
  const Grid grid = cfg.grid();
  const DyadicPartition lp(grid);

  ExperimentReport rep;
  rep.experiment = "validate";
  rep.notes = warnings;
  rep.notes.push_back("kernel variant: " + std::string(kernels::active().name));

  // spectral identities
  rep.checks.push_back(Check::at_most("partition of unity residual", lp.partition_residual(), 1e-14));

  const Field f = random_field(grid, 11);
  const Field g = random_field(grid, 23);
  rep.checks.push_back(
      Check::at_most("Helmholtz round trip", relative(helmholtz_apply(helmholtz_solve(f)), f), 1e-12));

  double sum_sq = 0.0;
  for (double x : f.samples()) sum_sq += x * x;
  const double physical = grid.spacing() * sum_sq;
  const double spectral = spectral_l2_squared(f);
  rep.checks.push_back(Check::at_most("Parseval identity", std::abs(physical - spectral) / spectral, 1e-12));

  std::vector<cplx> spec(grid.spectrum_size());
  std::vector<double> back(grid.size());
  fft::forward(grid, f.samples(), spec);
  fft::inverse(grid, spec, back);
  rep.checks.push_back(Check::at_most(
      "transform round trip", relative(Field::from_samples(grid, back), f), 1e-12));

  const double a = 0.7, b = -1.3;
  const Field combo = a * f + b * g;
  double linearity = 0.0;
  auto linear = [&](auto op) { linearity = std::max(linearity, relative(op(combo), a * op(f) + b * op(g))); };
  linear([](const Field& x) { return derivative(x); });
  linear([](const Field& x) { return derivative(x, 2); });
  linear([](const Field& x) { return helmholtz_solve(x); });
  linear([](const Field& x) { return nonlocal_deriv(x); });
  linear([](const Field& x) { return dealias(x); });
  for (int j = -1; j <= lp.max_block(); ++j) linear([&](const Field& x) { return lp.block(j, x); });
  rep.checks.push_back(Check::at_most("multiplier linearity", linearity, 1e-12));

  // block structure: symbols of blocks two or more apart never overlap
  double overlap = 0.0;
  for (int j = -1; j <= lp.max_block(); ++j)
    for (int k = j + 2; k <= lp.max_block(); ++k) {
      const auto sj = lp.symbol(j), sk = lp.symbol(k);
      for (std::size_t i = 0; i < sj.size(); ++i) overlap = std::max(overlap, std::abs(sj[i] * sk[i]));
    }
  rep.checks.push_back(Check::at_most("block orthogonality |j-j'| >= 2", overlap, 0.0));

  double purity = 0.0, identity = 0.0;
  for (int n = std::max(3, cfg.n_min); n <= cfg.n_max; ++n) {
    const Field fn = build_f_n(grid, {n, cfg.besov.s});
    const double total = spectral_l2_squared(fn);
    double off = 0.0;
    for (int j = -1; j <= lp.max_block(); ++j)
      if (j != n) off += spectral_l2_squared(lp.block(j, fn));
    purity = std::max(purity, off / total);
    identity = std::max(identity, relative(lp.block(n, fn), fn));
  }
  rep.checks.push_back(Check::at_most("f_n off-block energy", purity, 1e-12));
  rep.checks.push_back(Check::at_most("Delta_n f_n = f_n", identity, 1e-12));

  // dealiased product against the exact product on the doubled grid
  {
    const Grid fine = Grid::make(grid.half_length(), 2 * grid.size());
    auto refine = [&](const Field& x) {
      std::vector<cplx> s(fine.spectrum_size());
      std::copy(x.spectrum().begin(), x.spectrum().end() - 1, s.begin());
      return Field::from_spectrum(fine, std::move(s));
    };
    const Field exact = multiply_dealiased(refine(f), refine(g));
    const Field coarse = multiply_dealiased(f, g);
    double worst = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < grid.spectrum_size(); ++k) {
      const cplx want = k <= grid.dealias_index() ? exact.spectrum()[k] : cplx{};
      worst = std::max(worst, std::abs(coarse.spectrum()[k] - want));
      scale = std::max(scale, std::abs(want));
    }
    rep.checks.push_back(Check::at_most("dealiased product vs doubled grid", worst / scale, 1e-12));
  }

  // solver
  const BFamilyParams ch = BFamilyParams::case_i(2.0);
  const RichardsonResult rich = rk4_richardson(ch);
  rep.checks.push_back(Check::within("RK4 local error ratio", rich.local_ratio, 26.0, 38.0, "order 5 local error"));
  rep.checks.push_back(Check::within("RK4 global error ratio", rich.global_ratio, 12.0, 20.0));
  rep.checks.push_back(Check::within("RK4 global order", rich.global_order, 3.5, 4.5));

  const Grid small = smooth_test_grid();
  const auto traj = evolve(ch, smooth_test_state(small), SolverConfig::make(1e-3, 1.0, {0.25, 0.5, 0.75, 1.0}));
  rep.checks.push_back(Check::at_most("2CH energy drift (T = 1)", traj.max_energy_drift.value_or(1.0), 1e-8));
  rep.checks.push_back(Check::at_most("rho mass drift (T = 1)", traj.max_rho_mass_drift, 1e-10));
  return rep;
}

}  // namespace bflab
