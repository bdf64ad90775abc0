#include "bflab/rate_fit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace bflab {

RateFit least_squares(std::span<const std::pair<double, double>> xy) {
  if (xy.size() < 3)
    throw std::invalid_argument("rate fit needs at least 3 points, got " + std::to_string(xy.size()));
  const double m = static_cast<double>(xy.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : xy) {
    mx += x;
    my += y;
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : xy) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("rate fit needs at least two distinct abscissae");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (const auto& [x, y] : xy) {
    const double e = y - (fit.slope * x + fit.intercept);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / m);
  fit.points = xy.size();
  return fit;
}

namespace {

double checked_log2(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(what) + " must be positive and finite for a rate fit");
  return std::log2(v);
}

}  // namespace

RateFit fit_rate(std::span<const std::pair<double, double>> n_value) {
  std::vector<std::pair<double, double>> xy;
  xy.reserve(n_value.size());
  for (const auto& [n, v] : n_value) xy.emplace_back(n, checked_log2(v, "value"));
  return least_squares(xy);
}

RateFit fit_power_law(std::span<const std::pair<double, double>> t_value) {
  std::vector<std::pair<double, double>> xy;
  xy.reserve(t_value.size());
  for (const auto& [t, v] : t_value) xy.emplace_back(checked_log2(t, "t"), checked_log2(v, "value"));
  return least_squares(xy);
}

}  // namespace bflab
