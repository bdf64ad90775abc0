#include "bflab/littlewood_paley.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bflab/fft.hpp"
#include "bflab/kernels.hpp"
#include "bflab/spectral.hpp"

namespace bflab {
namespace {

double smooth_h(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double radial_cutoff(double x, double inner, double outer) {
  const double a = std::abs(x);
  const double width = outer - inner;
  const double up = smooth_h((outer - a) / width);
  const double down = smooth_h((a - inner) / width);
  return up / (up + down);
}

double lowpass_symbol(double xi) { return radial_cutoff(xi, 1.0, 4.0 / 3.0); }

double ring_symbol(int j, double xi) {
  return lowpass_symbol(std::ldexp(xi, -j - 1)) - lowpass_symbol(std::ldexp(xi, -j));
}

void BesovParams::validate() const {
  if (!std::isfinite(s)) throw std::invalid_argument("s must be finite");
  require_finite_exponent(p, "p");
  require_finite_exponent(r, "r");
}

DyadicPartition::DyadicPartition(const Grid& grid) : grid_(grid), max_block_(0) {
  const double nyq = grid.nyquist();
  while (std::ldexp(1.0, max_block_ + 1) < nyq) ++max_block_;

  const std::size_t m = grid.spectrum_size();
  symbols_.assign(static_cast<std::size_t>(max_block_) + 2, std::vector<double>(m));
  for (std::size_t k = 0; k < m; ++k) {
    const double xi = grid.frequency(k);
    symbols_[0][k] = lowpass_symbol(xi);
    for (int j = 0; j <= max_block_; ++j) symbols_[static_cast<std::size_t>(j) + 1][k] = ring_symbol(j, xi);
  }
}

std::span<const double> DyadicPartition::symbol(int j) const {
  if (j < -1 || j > max_block_)
    throw std::out_of_range("block index " + std::to_string(j) + " outside [-1, " +
                            std::to_string(max_block_) + "]");
  return symbols_[static_cast<std::size_t>(j + 1)];
}

Field DyadicPartition::block(int j, const Field& f) const {
  require_same_grid(grid_, f.grid(), "DyadicPartition::block");
  if (j <= -2) return Field::zero(grid_);
  return apply_symbol(f, symbol(j));
}

namespace {

// ||Delta_j f||_p without building a Field; skips the inverse transform when
// the block is empty.
double block_norm(const Grid& grid, std::span<const double> sym, std::span<const cplx> spec,
                  double p, std::vector<cplx>& zbuf, std::vector<double>& xbuf) {
  const auto& kt = kernels::active();
  std::copy(spec.begin(), spec.end(), zbuf.begin());
  kt.scale_by_symbol(zbuf, sym);
  if (kt.max_abs(kernels::as_reals(std::span<const cplx>(zbuf))) == 0.0) return 0.0;
  fft::inverse(grid, zbuf, xbuf);
  return lp_norm(xbuf, grid.spacing(), p);
}

}  // namespace

std::vector<std::pair<int, double>> DyadicPartition::block_profile(const Field& f, double p) const {
  require_same_grid(grid_, f.grid(), "DyadicPartition::block_profile");
  require_finite_exponent(p);
  std::vector<cplx> zbuf(grid_.spectrum_size());
  std::vector<double> xbuf(grid_.size());
  std::vector<std::pair<int, double>> out;
  out.reserve(symbols_.size());
  for (int j = -1; j <= max_block_; ++j)
    out.emplace_back(j, block_norm(grid_, symbol(j), f.spectrum(), p, zbuf, xbuf));
  return out;
}

double DyadicPartition::besov_norm(const Field& f, const BesovParams& bp) const {
  require_same_grid(grid_, f.grid(), "DyadicPartition::besov_norm");
  bp.validate();
  std::vector<cplx> zbuf(grid_.spectrum_size());
  std::vector<double> xbuf(grid_.size());
  double acc = 0.0;
  for (int j = -1; j <= max_block_; ++j) {
    const double b = block_norm(grid_, symbol(j), f.spectrum(), bp.p, zbuf, xbuf);
    if (b == 0.0) continue;
    acc += std::pow(std::exp2(j * bp.s) * b, bp.r);
  }
  return acc == 0.0 ? 0.0 : std::pow(acc, 1.0 / bp.r);
}

double DyadicPartition::partition_residual() const {
  double worst = 0.0;
  for (std::size_t k = 0; k < grid_.spectrum_size(); ++k) {
    double total = 0.0;
    for (const auto& sym : symbols_) total += sym[k];
    worst = std::max(worst, std::abs(total - 1.0));
  }
  return worst;
}

}  // namespace bflab
