#pragma once

// Fourier multipliers, dealiased products and L^p quadrature on Field.

#include <span>
#include <vector>

#include "bflab/field.hpp"

namespace bflab {

/// (i xi)^order applied to the spectrum. For odd orders the Nyquist mode is
/// zeroed, since i xi_Nyq has no real-valued counterpart.
Field derivative(const Field& f, int order = 1);

/// (1 - d_xx)^{-1}: spectrum divided by 1 + xi^2.
Field helmholtz_solve(const Field& f);

/// (1 - d_xx) f, the inverse of helmholtz_solve.
Field helmholtz_apply(const Field& f);

/// d_x (1 - d_xx)^{-1} as the single multiplier i xi / (1 + xi^2).
Field nonlocal_deriv(const Field& f);

/// Pointwise product under the 2/3 rule: modes above the dealiasing cutoff
/// are removed from both inputs and from the result.
Field multiply_dealiased(const Field& f, const Field& g);

/// Zero every mode above the dealiasing cutoff.
Field dealias(const Field& f);

/// Rectangle-rule (dx sum |f_j|^p)^{1/p}; requires 1 <= p < infinity.
double lp_norm(const Field& f, double p);
double lp_norm(std::span<const double> samples, double dx, double p);

/// Throws std::invalid_argument unless 1 <= p < infinity.
void require_finite_exponent(double p, const char* name = "p");

/// Multiply the half spectrum by a real symbol sampled at xi_k.
Field apply_symbol(const Field& f, std::span<const double> symbol);

/// Sampled symbols used by the operators above (half spectrum, length N/2+1).
std::vector<double> derivative_symbol(const Grid& grid);           // xi, Nyquist 0
std::vector<double> helmholtz_inverse_symbol(const Grid& grid);    // 1/(1+xi^2)
std::vector<double> nonlocal_symbol(const Grid& grid);             // xi/(1+xi^2), Nyquist 0
std::vector<double> dealias_mask(const Grid& grid);                // 1 kept, 0 removed

/// dx * sum of samples (the rectangle rule for the integral over [-L, L)).
double integrate(const Field& f);

/// L^2 norm squared from the spectrum via Parseval.
double spectral_l2_squared(const Field& f);

}  // namespace bflab
