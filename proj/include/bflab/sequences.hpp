#pragma once

// High/low frequency initial-data families used by the non-uniform
// dependence construction:
//
//   f_n = 2^{-ns} phi(x) sin((17/12) 2^n x),   g_n = 2^{-n} phi(x),
//   (u, rho)^1(0) = (f_n, 2^n f_n),            (u, rho)^2(0) = (f_n + g_n, 2^n f_n + g_n)
//
// phi is defined through its transform: phihat is even, in [0, 1], equal to 1
// on |xi| <= 1/4 and 0 on |xi| >= 1/2.

#include "bflab/bfamily.hpp"

namespace bflab {

inline constexpr double kCarrierRatio = 17.0 / 12.0;

/// phihat(xi), same exp-based step as the Littlewood-Paley symbols.
double bump_symbol(double xi);

/// phi on the grid, obtained by sampling phihat at the grid frequencies (this
/// is the periodization of phi over [-L, L)).
Field bump_phi(const Grid& grid);

struct SequenceIndex {
  int n = 4;
  double s = 2.0;
};

/// Carrier frequency (17/12) 2^n of f_n.
double carrier_frequency(int n);

/// Largest n with (17/6) 2^n + 1 <= (2/3) xi_Nyq; below 3 means none.
int max_feasible_index(const Grid& grid);

/// Throws CapacityError("grid too coarse for n ...") when the products of the
/// n-th data overflow the dealiased band, or std::invalid_argument for n < 3.
void require_capacity(const Grid& grid, int n);

/// f_n built from its transform, so it is exactly band-limited to
/// +-(17/12) 2^n + [-1/2, 1/2]; the samples equal phi(x) sin((17/12) 2^n x) up
/// to the periodization of phi.
Field build_f_n(const Grid& grid, const SequenceIndex& idx);
Field build_g_n(const Grid& grid, int n);

/// which = 1 or 2.
State initial_data(const Grid& grid, const SequenceIndex& idx, int which);

struct DriftFields {
  Field v0;  // u0 d_x u0
  Field w0;  // k3 u0 d_x rho0
};

/// Drift fields of the which = 2 data.
DriftFields drift_fields(const Grid& grid, const SequenceIndex& idx, const BFamilyParams& params);

}  // namespace bflab
