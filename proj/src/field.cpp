#include "bflab/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bflab/fft.hpp"
#include "bflab/kernels.hpp"

namespace bflab {

Field Field::zero(const Grid& grid) {
  return Field(grid, std::vector<double>(grid.size(), 0.0),
               std::vector<cplx>(grid.spectrum_size(), cplx{}));
}

Field Field::constant(const Grid& grid, double value) {
  std::vector<cplx> spec(grid.spectrum_size(), cplx{});
  spec[0] = value * grid.length();
  return Field(grid, std::vector<double>(grid.size(), value), std::move(spec));
}

Field Field::from_samples(const Grid& grid, std::vector<double> samples) {
  if (samples.size() != grid.size())
    throw std::invalid_argument("Field::from_samples: expected " + std::to_string(grid.size()) +
                                " samples, got " + std::to_string(samples.size()));
  std::vector<cplx> spec(grid.spectrum_size());
  fft::forward(grid, samples, spec);
  return Field(grid, std::move(samples), std::move(spec));
}

Field Field::from_spectrum(const Grid& grid, std::vector<cplx> spectrum) {
  if (spectrum.size() != grid.spectrum_size())
    throw std::invalid_argument("Field::from_spectrum: expected " +
                                std::to_string(grid.spectrum_size()) + " coefficients, got " +
                                std::to_string(spectrum.size()));
  spectrum.front().imag(0.0);
  spectrum.back().imag(0.0);
  std::vector<double> samples(grid.size());
  fft::inverse(grid, spectrum, samples);
  return Field(grid, std::move(samples), std::move(spectrum));
}

Field Field::from_function(const Grid& grid, const std::function<double(double)>& f) {
  std::vector<double> samples(grid.size());
  for (std::size_t j = 0; j < samples.size(); ++j) samples[j] = f(grid.position(j));
  return from_samples(grid, std::move(samples));
}

double Field::bandwidth(double threshold) const {
  for (std::size_t k = spectrum_.size(); k-- > 0;) {
    if (std::abs(spectrum_[k]) > threshold) return grid_.frequency(k);
  }
  return 0.0;
}

Field Field::operator-() const { return -1.0 * *this; }

Field operator+(const Field& a, const Field& b) {
  require_same_grid(a.grid_, b.grid_, "Field +");
  const auto& kt = kernels::active();
  std::vector<double> s(a.samples_.size());
  std::vector<cplx> z(a.spectrum_.size());
  kt.axpy(s, a.samples_, 1.0, b.samples_);
  kt.axpy(kernels::as_reals(std::span<cplx>(z)), kernels::as_reals(std::span<const cplx>(a.spectrum_)),
          1.0, kernels::as_reals(std::span<const cplx>(b.spectrum_)));
  return Field(a.grid_, std::move(s), std::move(z));
}

Field operator-(const Field& a, const Field& b) {
  require_same_grid(a.grid_, b.grid_, "Field -");
  const auto& kt = kernels::active();
  std::vector<double> s(a.samples_.size());
  std::vector<cplx> z(a.spectrum_.size());
  kt.axpy(s, a.samples_, -1.0, b.samples_);
  kt.axpy(kernels::as_reals(std::span<cplx>(z)), kernels::as_reals(std::span<const cplx>(a.spectrum_)),
          -1.0, kernels::as_reals(std::span<const cplx>(b.spectrum_)));
  return Field(a.grid_, std::move(s), std::move(z));
}

Field operator*(double a, const Field& f) {
  std::vector<double> s(f.samples_);
  std::vector<cplx> z(f.spectrum_);
  for (double& v : s) v *= a;
  for (cplx& v : z) v *= a;
  return Field(f.grid_, std::move(s), std::move(z));
}

double max_relative_difference(const Field& a, const Field& b) {
  require_same_grid(a.grid(), b.grid(), "max_relative_difference");
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t j = 0; j < a.samples().size(); ++j) {
    diff = std::max(diff, std::abs(a[j] - b[j]));
    scale = std::max(scale, std::abs(b[j]));
  }
  return diff / std::max(scale, std::numeric_limits<double>::min());
}

}  // namespace bflab
