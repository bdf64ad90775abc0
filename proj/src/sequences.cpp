#include "bflab/sequences.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bflab/errors.hpp"
#include "bflab/littlewood_paley.hpp"
#include "bflab/spectral.hpp"

namespace bflab {

double bump_symbol(double xi) { return radial_cutoff(xi, 0.25, 0.5); }

Field bump_phi(const Grid& grid) {
  std::vector<cplx> spec(grid.spectrum_size());
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] = bump_symbol(grid.frequency(k));
  return Field::from_spectrum(grid, std::move(spec));
}

double carrier_frequency(int n) { return kCarrierRatio * std::ldexp(1.0, n); }

namespace {

bool fits(const Grid& grid, int n) {
  return (17.0 / 6.0) * std::ldexp(1.0, n) + 1.0 <= grid.dealias_cutoff();
}

}  // namespace

int max_feasible_index(const Grid& grid) {
  int n = 0;
  while (fits(grid, n + 1)) ++n;
  return n;
}

void require_capacity(const Grid& grid, int n) {
  if (n < 3) throw std::invalid_argument("sequence index n must be >= 3, got " + std::to_string(n));
  if (!fits(grid, n)) {
    const int best = max_feasible_index(grid);
    throw CapacityError("grid too coarse for n = " + std::to_string(n) +
                            " (largest feasible n is " + std::to_string(best) + ")",
                        best);
  }
}

Field build_f_n(const Grid& grid, const SequenceIndex& idx) {
  require_capacity(grid, idx.n);
  // transform of phi(x) sin(lambda x) is (phihat(xi - lambda) - phihat(xi + lambda)) / 2i;
  // lambda is not a grid frequency, so sampling the product directly would leak
  const double amp = std::exp2(-idx.n * idx.s);
  const double lambda = carrier_frequency(idx.n);
  std::vector<cplx> spec(grid.spectrum_size());
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double xi = grid.frequency(k);
    spec[k] = cplx(0.0, -0.5 * amp * (bump_symbol(xi - lambda) - bump_symbol(xi + lambda)));
  }
  return Field::from_spectrum(grid, std::move(spec));
}

Field build_g_n(const Grid& grid, int n) { return std::exp2(-n) * bump_phi(grid); }

State initial_data(const Grid& grid, const SequenceIndex& idx, int which) {
  if (which != 1 && which != 2)
    throw std::invalid_argument("initial data index must be 1 or 2, got " + std::to_string(which));
  const Field f = build_f_n(grid, idx);
  const Field rho = std::exp2(idx.n) * f;
  if (which == 1) return {f, rho};
  const Field g = build_g_n(grid, idx.n);
  return {f + g, rho + g};
}

DriftFields drift_fields(const Grid& grid, const SequenceIndex& idx, const BFamilyParams& params) {
  const State st = initial_data(grid, idx, 2);
  return {multiply_dealiased(st.u, derivative(st.u)),
          params.k3 * multiply_dealiased(st.u, derivative(st.rho))};
}

}  // namespace bflab
