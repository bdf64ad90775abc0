#pragma once

// Invariant suites behind the `validate` command: spectral identities, dyadic
// block structure, dealiasing, and RK4 convergence and conservation.

#include "bflab/experiments.hpp"

namespace bflab {

/// Smooth 2CH problem on a small grid used for the solver checks:
/// L = pi, N = 64, u = 0.4 cos x + 0.2 sin 2x, rho = 0.3 + 0.1 cos x.
State smooth_test_state(const Grid& grid);
Grid smooth_test_grid();

struct RichardsonResult {
  double local_ratio = 0.0;   // local error(h) / local error(h/2), expect ~32
  double global_ratio = 0.0;  // global error(dt) / global error(dt/2), expect ~16
  double global_order = 0.0;  // log2 of global_ratio
};

/// Step-doubling self-convergence of rk4_step / evolve on the smooth problem.
RichardsonResult rk4_richardson(const BFamilyParams& params);

/// Every check carries its measured residual and threshold. The spectral and
/// block checks run on cfg's grid; the solver checks use the smooth problem.
ExperimentReport run_validation(const ExperimentConfig& cfg);

}  // namespace bflab
