#pragma once

#include <span>
#include <utility>

namespace bflab {

/// Least-squares line y = slope * x + intercept; residual is the RMS of the
/// fit residuals.
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
  std::size_t points = 0;
};

/// Fit of (x, y) pairs. Needs at least 3 points and non-constant x.
RateFit least_squares(std::span<const std::pair<double, double>> xy);

/// Fit of (n, log2 value). Values must be positive.
RateFit fit_rate(std::span<const std::pair<double, double>> n_value);

/// Fit of (log2 t, log2 value): the power-law exponent in t. Both positive.
RateFit fit_power_law(std::span<const std::pair<double, double>> t_value);

}  // namespace bflab
