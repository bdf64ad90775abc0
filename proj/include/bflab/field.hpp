#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "bflab/grid.hpp"

namespace bflab {

using cplx = std::complex<double>;

/// A real periodic function on a Grid, held both as samples and as the
/// half spectrum k = 0..N/2 (normalization documented in fft.hpp).
///
/// Fields are immutable values; every operation returns a new Field. The two
/// representations are always consistent under the transform pair.
class Field {
 public:
  static Field zero(const Grid& grid);
  static Field constant(const Grid& grid, double value);
  static Field from_samples(const Grid& grid, std::vector<double> samples);
  /// The imaginary parts of the DC and Nyquist entries are dropped.
  static Field from_spectrum(const Grid& grid, std::vector<cplx> spectrum);
  static Field from_function(const Grid& grid, const std::function<double(double)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> samples() const noexcept { return samples_; }
  std::span<const cplx> spectrum() const noexcept { return spectrum_; }
  double operator[](std::size_t j) const noexcept { return samples_[j]; }

  /// Largest |xi_k| carrying a coefficient with modulus above `threshold`;
  /// 0 when none does.
  double bandwidth(double threshold = 0.0) const;

  Field operator-() const;
  friend Field operator+(const Field& a, const Field& b);
  friend Field operator-(const Field& a, const Field& b);
  friend Field operator*(double a, const Field& f);
  friend Field operator*(const Field& f, double a) { return a * f; }

 private:
  Field(Grid grid, std::vector<double> samples, std::vector<cplx> spectrum)
      : grid_(grid), samples_(std::move(samples)), spectrum_(std::move(spectrum)) {}

  Grid grid_;
  std::vector<double> samples_;
  std::vector<cplx> spectrum_;
};

/// max_j |a_j - b_j| / max(max_j |b_j|, tiny)
double max_relative_difference(const Field& a, const Field& b);

}  // namespace bflab
