#include "bflab/bfamily.hpp"

#include <cmath>
#include <stdexcept>

#include "bflab/fft.hpp"
#include "bflab/kernels.hpp"
#include "bflab/spectral.hpp"

namespace bflab {

std::string to_string(ParamCase c) { return c == ParamCase::i ? "i" : "ii"; }

BFamilyParams BFamilyParams::case_i(double b) {
  return {b, 2.0 * b, 1.0, ParamCase::i, b};
}

BFamilyParams BFamilyParams::case_ii(double b) {
  return {b + 1.0, 2.0, b, ParamCase::ii, b};
}

BFamilyParams BFamilyParams::custom(double k1, double k2, double k3) {
  return {k1, k2, k3, std::nullopt, std::nullopt};
}

std::optional<double> BFamilyParams::sigma() const {
  if (!is_two_component_ch()) return std::nullopt;
  return k2;
}

void BFamilyParams::validate() const {
  if (!std::isfinite(k1) || !std::isfinite(k2) || !std::isfinite(k3))
    throw std::invalid_argument("k1, k2, k3 must be finite");
  if (!case_tag) return;
  if (!b) throw std::invalid_argument("a parameter case requires b");
  const BFamilyParams expect = *case_tag == ParamCase::i ? case_i(*b) : case_ii(*b);
  if (expect.k1 != k1 || expect.k2 != k2 || expect.k3 != k3)
    throw std::invalid_argument("(k1, k2, k3) inconsistent with case " + to_string(*case_tag) +
                                " and b = " + std::to_string(*b));
}

VectorField::VectorField(const BFamilyParams& params, const Grid& grid)
    : params_(params),
      grid_(grid),
      mask_(dealias_mask(grid)),
      deriv_(derivative_symbol(grid)),
      nonlocal_(nonlocal_symbol(grid)) {
  const std::size_t m = grid.spectrum_size();
  const std::size_t n = grid.size();
  for (auto* z : {&zu_, &zux_, &zr_, &zrx_, &za_, &zb_}) z->assign(m, cplx{});
  for (auto* x : {&u_, &ux_, &r_, &rx_, &work_}) x->assign(n, 0.0);
}

void VectorField::evaluate(std::span<const cplx> u, std::span<const cplx> rho, std::span<cplx> du,
                           std::span<cplx> drho) {
  const std::size_t m = grid_.spectrum_size();
  if (u.size() != m || rho.size() != m || du.size() != m || drho.size() != m)
    throw std::invalid_argument("VectorField::evaluate: spectrum size mismatch");
  const auto& kt = kernels::active();
  const double k1 = params_.k1, k2 = params_.k2, k3 = params_.k3;

  std::copy(u.begin(), u.end(), zu_.begin());
  std::copy(rho.begin(), rho.end(), zr_.begin());
  kt.scale_by_symbol(zu_, mask_);
  kt.scale_by_symbol(zr_, mask_);
  zux_ = zu_;
  zrx_ = zr_;
  kt.scale_by_imag_symbol(zux_, deriv_);
  kt.scale_by_imag_symbol(zrx_, deriv_);

  fft::inverse(grid_, zu_, u_);
  fft::inverse(grid_, zux_, ux_);
  fft::inverse(grid_, zr_, r_);
  fft::inverse(grid_, zrx_, rx_);
  last_max_abs_u_ = kt.max_abs(u_);

  // transport u u_x
  kt.multiply(work_, u_, ux_);
  fft::forward(grid_, work_, za_);

  // argument of the nonlocal operator
  kt.multiply(work_, u_, u_);
  for (double& v : work_) v *= 0.5 * k1;
  kt.accumulate_product(work_, ux_, ux_, 0.5 * (3.0 - k1));
  kt.accumulate_product(work_, r_, r_, 0.5 * k2);
  fft::forward(grid_, work_, zb_);
  kt.scale_by_imag_symbol(zb_, nonlocal_);

  for (std::size_t k = 0; k < m; ++k) du[k] = mask_[k] * (za_[k] + zb_[k]);

  // k3 (u rho_x + rho u_x)
  kt.multiply(work_, u_, rx_);
  kt.accumulate_product(work_, r_, ux_, 1.0);
  for (double& v : work_) v *= k3;
  fft::forward(grid_, work_, drho);
  kt.scale_by_symbol(drho, mask_);
}

StateDerivative rhs(const BFamilyParams& params, const State& st) {
  require_same_grid(st.u.grid(), st.rho.grid(), "rhs");
  const Grid& grid = st.u.grid();
  VectorField vf(params, grid);
  std::vector<cplx> du(grid.spectrum_size()), drho(grid.spectrum_size());
  vf.evaluate(st.u.spectrum(), st.rho.spectrum(), du, drho);
  return {Field::from_spectrum(grid, std::move(du)), Field::from_spectrum(grid, std::move(drho))};
}

Field momentum(const Field& u) { return helmholtz_apply(u); }

ConservedQuantities conserved_quantities(const BFamilyParams& params, const State& st) {
  require_same_grid(st.u.grid(), st.rho.grid(), "conserved_quantities");
  ConservedQuantities q;
  q.rho_mass = integrate(st.rho);
  q.momentum_mass = integrate(momentum(st.u));
  if (params.is_two_component_ch()) {
    const Field ux = derivative(st.u);
    const double dx = st.u.grid().spacing();
    const auto& kt = kernels::active();
    q.energy_2ch = dx * (kt.sum_abs_pow(st.u.samples(), 2.0) + kt.sum_abs_pow(ux.samples(), 2.0) +
                         params.k2 * kt.sum_abs_pow(st.rho.samples(), 2.0));
  }
  return q;
}

}  // namespace bflab
