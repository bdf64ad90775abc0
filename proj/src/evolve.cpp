#include "bflab/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bflab/errors.hpp"
#include "bflab/kernels.hpp"
#include "bflab/spectral.hpp"

namespace bflab {

SolverConfig SolverConfig::make(double dt, double final_time, std::vector<double> sample_times,
                                double cfl_guard) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(final_time >= 0.0) || !std::isfinite(final_time))
    throw ConfigError("T must be non-negative");
  if (final_time > 0.0 && dt > final_time) throw ConfigError("dt must not exceed T");
  if (!(cfl_guard > 0.0)) throw ConfigError("cfl_guard must be positive");

  SolverConfig cfg;
  cfg.dt_ = dt;
  cfg.final_time_ = final_time;
  cfg.cfl_guard_ = cfl_guard;
  cfg.steps_ = std::lround(final_time / dt);

  std::sort(sample_times.begin(), sample_times.end());
  for (double t : sample_times) {
    if (!(t >= 0.0) || t > final_time * (1.0 + 1e-12))
      throw ConfigError("sample time " + std::to_string(t) + " outside [0, T]");
    const long step = std::min(std::lround(t / dt), cfg.steps_);
    cfg.max_snap_ = std::max(cfg.max_snap_, std::abs(t - static_cast<double>(step) * dt));
    if (!cfg.sample_steps_.empty() && cfg.sample_steps_.back() == step) continue;
    cfg.sample_steps_.push_back(step);
    cfg.sample_times_.push_back(static_cast<double>(step) * dt);
  }
  return cfg;
}

const Sample& Trajectory::at(double t) const {
  const Sample* best = nullptr;
  double dist = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    const double d = std::abs(s.time - t);
    if (d < dist) {
      dist = d;
      best = &s;
    }
  }
  // half a step of the coarsest sensible spacing; callers pass exact sample times
  if (!best || dist > 1e-9 * std::max(1.0, std::abs(t)))
    throw std::out_of_range("no trajectory sample at t = " + std::to_string(t));
  return *best;
}

namespace {

class Rk4Stepper {
 public:
  Rk4Stepper(const BFamilyParams& params, const Grid& grid)
      : field_(params, grid), m_(grid.spectrum_size()) {
    for (auto* z : {&ku1_, &ku2_, &ku3_, &ku4_, &kr1_, &kr2_, &kr3_, &kr4_, &tu_, &tr_})
      z->assign(m_, cplx{});
  }

  VectorField& field() noexcept { return field_; }

  // Advances (u, rho) in place by dt. `t` is only used for diagnostics.
  // Returns max|u| at the start of the step.
  double step(std::vector<cplx>& u, std::vector<cplx>& rho, double dt, double t) {
    using kernels::as_reals;
    const auto& kt = kernels::active();
    auto stage = [&](std::span<const cplx> su, std::span<const cplx> sr, std::vector<cplx>& ku,
                     std::vector<cplx>& kr) {
      field_.evaluate(su, sr, ku, kr);
      if (!kt.all_finite(as_reals(std::span<const cplx>(ku))) ||
          !kt.all_finite(as_reals(std::span<const cplx>(kr)))) {
        std::ostringstream msg;
        msg << "numerical blow-up at t = " << t;
        throw NumericalAbort(msg.str(), t);
      }
    };
    auto combine = [&](std::vector<cplx>& out, const std::vector<cplx>& x, double a,
                       const std::vector<cplx>& y) {
      kt.axpy(as_reals(std::span<cplx>(out)), as_reals(std::span<const cplx>(x)), a,
              as_reals(std::span<const cplx>(y)));
    };

    stage(u, rho, ku1_, kr1_);
    const double umax = field_.last_max_abs_u();
    combine(tu_, u, 0.5 * dt, ku1_);
    combine(tr_, rho, 0.5 * dt, kr1_);
    stage(tu_, tr_, ku2_, kr2_);
    combine(tu_, u, 0.5 * dt, ku2_);
    combine(tr_, rho, 0.5 * dt, kr2_);
    stage(tu_, tr_, ku3_, kr3_);
    combine(tu_, u, dt, ku3_);
    combine(tr_, rho, dt, kr3_);
    stage(tu_, tr_, ku4_, kr4_);

    combine(u, u, dt / 6.0, ku1_);
    combine(u, u, dt / 3.0, ku2_);
    combine(u, u, dt / 3.0, ku3_);
    combine(u, u, dt / 6.0, ku4_);
    combine(rho, rho, dt / 6.0, kr1_);
    combine(rho, rho, dt / 3.0, kr2_);
    combine(rho, rho, dt / 3.0, kr3_);
    combine(rho, rho, dt / 6.0, kr4_);
    return umax;
  }

 private:
  VectorField field_;
  std::size_t m_;
  std::vector<cplx> ku1_, ku2_, ku3_, ku4_, kr1_, kr2_, kr3_, kr4_, tu_, tr_;
};

State to_state(const Grid& grid, const std::vector<cplx>& u, const std::vector<cplx>& rho) {
  return {Field::from_spectrum(grid, u), Field::from_spectrum(grid, rho)};
}

}  // namespace

State rk4_step(const BFamilyParams& params, const State& st, double dt) {
  require_same_grid(st.u.grid(), st.rho.grid(), "rk4_step");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  const Grid& grid = st.u.grid();
  Rk4Stepper stepper(params, grid);
  std::vector<cplx> u(st.u.spectrum().begin(), st.u.spectrum().end());
  std::vector<cplx> rho(st.rho.spectrum().begin(), st.rho.spectrum().end());
  stepper.step(u, rho, dt, 0.0);
  return to_state(grid, u, rho);
}

Trajectory evolve(const BFamilyParams& params, const State& initial, const SolverConfig& cfg) {
  params.validate();
  require_same_grid(initial.u.grid(), initial.rho.grid(), "evolve");
  const Grid& grid = initial.u.grid();
  const double dt = cfg.dt();
  const double cfl_factor = dt / grid.spacing();

  const double u0max = kernels::active().max_abs(initial.u.samples());
  if (cfl_factor * u0max > cfg.cfl_guard()) {
    std::ostringstream msg;
    msg << "CFL guard violated at t = 0: dt/dx*max|u| = " << cfl_factor * u0max << " > "
        << cfg.cfl_guard();
    throw NumericalAbort(msg.str(), 0.0);
  }

  Rk4Stepper stepper(params, grid);
  std::vector<cplx> u(initial.u.spectrum().begin(), initial.u.spectrum().end());
  std::vector<cplx> rho(initial.rho.spectrum().begin(), initial.rho.spectrum().end());

  const ConservedQuantities q0 = conserved_quantities(params, initial);
  const double mass_scale =
      std::max({std::abs(q0.rho_mass), lp_norm(initial.rho, 1.0), std::numeric_limits<double>::min()});

  Trajectory traj;
  const auto& steps = cfg.sample_steps();
  std::size_t next = 0;
  auto record = [&](long step) {
    while (next < steps.size() && steps[next] == step) {
      Sample s{static_cast<double>(step) * dt, step,
               step == 0 ? initial : to_state(grid, u, rho), {}};
      s.conserved = conserved_quantities(params, s.state);
      traj.max_rho_mass_drift =
          std::max(traj.max_rho_mass_drift, std::abs(s.conserved.rho_mass - q0.rho_mass) / mass_scale);
      if (q0.energy_2ch && s.conserved.energy_2ch) {
        const double drift = std::abs(*s.conserved.energy_2ch - *q0.energy_2ch) /
                             std::max(std::abs(*q0.energy_2ch), std::numeric_limits<double>::min());
        traj.max_energy_drift = std::max(traj.max_energy_drift.value_or(0.0), drift);
      }
      traj.samples.push_back(std::move(s));
      ++next;
    }
  };

  record(0);
  for (long n = 0; n < cfg.step_count(); ++n) {
    const double t = static_cast<double>(n) * dt;
    const double umax = stepper.step(u, rho, dt, t);
    const double cfl = cfl_factor * umax;
    traj.max_cfl_number = std::max(traj.max_cfl_number, cfl);
    if (cfl > cfg.cfl_guard()) {
      std::ostringstream msg;
      msg << "CFL guard violated at t = " << t << ": dt/dx*max|u| = " << cfl << " > "
          << cfg.cfl_guard();
      throw NumericalAbort(msg.str(), t);
    }
    record(n + 1);
  }
  return traj;
}

}  // namespace bflab
