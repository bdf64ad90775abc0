#pragma once

#include <vector>

#include "bflab/bfamily.hpp"

namespace bflab {

/// Fixed-step RK4 configuration. Sample times are snapped to the nearest
/// multiple of dt at construction; the largest snap distance is kept.
class SolverConfig {
 public:
  static constexpr double kDefaultDt = 1e-3;
  static constexpr double kDefaultFinalTime = 0.1;
  static constexpr double kDefaultCflGuard = 0.5;

  /// Requires dt > 0, T >= 0 (dt <= T unless T == 0), sample times in [0, T],
  /// cfl_guard > 0. Throws ConfigError otherwise.
  static SolverConfig make(double dt, double final_time, std::vector<double> sample_times,
                           double cfl_guard = kDefaultCflGuard);

  double dt() const noexcept { return dt_; }
  double final_time() const noexcept { return final_time_; }
  double cfl_guard() const noexcept { return cfl_guard_; }
  long step_count() const noexcept { return steps_; }
  const std::vector<double>& sample_times() const noexcept { return sample_times_; }
  /// Step index of each (sorted, de-duplicated) sample time.
  const std::vector<long>& sample_steps() const noexcept { return sample_steps_; }
  double max_snap_distance() const noexcept { return max_snap_; }

 private:
  double dt_ = kDefaultDt;
  double final_time_ = kDefaultFinalTime;
  double cfl_guard_ = kDefaultCflGuard;
  long steps_ = 0;
  std::vector<double> sample_times_;
  std::vector<long> sample_steps_;
  double max_snap_ = 0.0;
};

struct Sample {
  double time = 0.0;
  long step = 0;
  State state;
  ConservedQuantities conserved;
};

struct Trajectory {
  std::vector<Sample> samples;
  double max_cfl_number = 0.0;       // max over steps of dt/dx * max|u|
  double max_rho_mass_drift = 0.0;   // relative, over the samples
  std::optional<double> max_energy_drift;  // relative, 2CH sub-case only

  /// Sample whose snapped time is closest to t; throws std::out_of_range when
  /// no sample is within half a step.
  const Sample& at(double t) const;
};

/// One classical RK4 step. Throws NumericalAbort on non-finite stage values.
State rk4_step(const BFamilyParams& params, const State& st, double dt);

/// Integrate to cfg.final_time() with fixed dt, recording the requested
/// samples. Throws NumericalAbort on blow-up or when dt/dx*max|u| exceeds the
/// CFL guard.
Trajectory evolve(const BFamilyParams& params, const State& initial, const SolverConfig& cfg);

}  // namespace bflab
