#include "bflab/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bflab/fft.hpp"
#include "bflab/kernels.hpp"

namespace bflab {

std::vector<double> derivative_symbol(const Grid& grid) {
  std::vector<double> sym(grid.spectrum_size());
  for (std::size_t k = 0; k < sym.size(); ++k) sym[k] = grid.frequency(k);
  sym.back() = 0.0;
  return sym;
}

std::vector<double> helmholtz_inverse_symbol(const Grid& grid) {
  std::vector<double> sym(grid.spectrum_size());
  for (std::size_t k = 0; k < sym.size(); ++k) {
    const double xi = grid.frequency(k);
    sym[k] = 1.0 / (1.0 + xi * xi);
  }
  return sym;
}

std::vector<double> nonlocal_symbol(const Grid& grid) {
  std::vector<double> sym(grid.spectrum_size());
  for (std::size_t k = 0; k < sym.size(); ++k) {
    const double xi = grid.frequency(k);
    sym[k] = xi / (1.0 + xi * xi);
  }
  sym.back() = 0.0;
  return sym;
}

std::vector<double> dealias_mask(const Grid& grid) {
  std::vector<double> mask(grid.spectrum_size(), 0.0);
  const std::size_t keep = grid.dealias_index();
  for (std::size_t k = 0; k <= keep && k < mask.size(); ++k) mask[k] = 1.0;
  return mask;
}

Field apply_symbol(const Field& f, std::span<const double> symbol) {
  std::vector<cplx> spec(f.spectrum().begin(), f.spectrum().end());
  kernels::active().scale_by_symbol(spec, symbol);
  return Field::from_spectrum(f.grid(), std::move(spec));
}

Field derivative(const Field& f, int order) {
  if (order < 1) throw std::invalid_argument("derivative order must be positive");
  const Grid& grid = f.grid();
  std::vector<cplx> spec(f.spectrum().begin(), f.spectrum().end());
  // (i xi)^order = i^order xi^order
  const int phase = order % 4;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double m = std::pow(grid.frequency(k), order);
    const cplx z = spec[k] * m;
    switch (phase) {
      case 0: spec[k] = z; break;
      case 1: spec[k] = cplx(-z.imag(), z.real()); break;
      case 2: spec[k] = -z; break;
      default: spec[k] = cplx(z.imag(), -z.real()); break;
    }
  }
  if (order % 2 == 1) spec.back() = cplx{};
  return Field::from_spectrum(grid, std::move(spec));
}

Field helmholtz_solve(const Field& f) {
  return apply_symbol(f, helmholtz_inverse_symbol(f.grid()));
}

Field helmholtz_apply(const Field& f) {
  const Grid& grid = f.grid();
  std::vector<double> sym(grid.spectrum_size());
  for (std::size_t k = 0; k < sym.size(); ++k) {
    const double xi = grid.frequency(k);
    sym[k] = 1.0 + xi * xi;
  }
  return apply_symbol(f, sym);
}

Field nonlocal_deriv(const Field& f) {
  std::vector<cplx> spec(f.spectrum().begin(), f.spectrum().end());
  kernels::active().scale_by_imag_symbol(spec, nonlocal_symbol(f.grid()));
  return Field::from_spectrum(f.grid(), std::move(spec));
}

Field dealias(const Field& f) { return apply_symbol(f, dealias_mask(f.grid())); }

Field multiply_dealiased(const Field& f, const Field& g) {
  require_same_grid(f.grid(), g.grid(), "multiply_dealiased");
  const Grid& grid = f.grid();
  const Field ft = dealias(f);
  const Field gt = dealias(g);
  std::vector<double> prod(grid.size());
  kernels::active().multiply(prod, ft.samples(), gt.samples());
  std::vector<cplx> spec(grid.spectrum_size());
  fft::forward(grid, prod, spec);
  kernels::active().scale_by_symbol(spec, dealias_mask(grid));
  return Field::from_spectrum(grid, std::move(spec));
}

void require_finite_exponent(double p, const char* name) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::invalid_argument(std::string(name) + " must be ≥ 1 and finite");
}

double lp_norm(std::span<const double> samples, double dx, double p) {
  require_finite_exponent(p);
  const double acc = kernels::active().sum_abs_pow(samples, p);
  if (acc == 0.0) return 0.0;
  return std::pow(dx * acc, 1.0 / p);
}

double lp_norm(const Field& f, double p) {
  return lp_norm(f.samples(), f.grid().spacing(), p);
}

double integrate(const Field& f) {
  return f.grid().spacing() * kernels::active().sum(f.samples());
}

double spectral_l2_squared(const Field& f) {
  const auto spec = f.spectrum();
  double acc = std::norm(spec.front()) + std::norm(spec.back());
  for (std::size_t k = 1; k + 1 < spec.size(); ++k) acc += 2.0 * std::norm(spec[k]);
  return acc / f.grid().length();
}

}  // namespace bflab
