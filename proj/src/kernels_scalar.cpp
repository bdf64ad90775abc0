#include "bflab/kernels.hpp"

#include <cassert>
#include <cmath>

namespace bflab::kernels {
namespace {

void scale_by_symbol(std::span<cplx> spec, std::span<const double> symbol) {
  assert(spec.size() == symbol.size());
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= symbol[k];
}

void scale_by_imag_symbol(std::span<cplx> spec, std::span<const double> symbol) {
  assert(spec.size() == symbol.size());
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double re = spec[k].real();
    const double im = spec[k].imag();
    spec[k] = cplx(-im * symbol[k], re * symbol[k]);
  }
}

void multiply(std::span<double> out, std::span<const double> a, std::span<const double> b) {
  assert(out.size() == a.size() && a.size() == b.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}

void accumulate_product(std::span<double> out, std::span<const double> a,
                        std::span<const double> b, double coef) {
  assert(out.size() == a.size() && a.size() == b.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += coef * (a[i] * b[i]);
}

void axpy(std::span<double> out, std::span<const double> x, double alpha,
          std::span<const double> y) {
  assert(out.size() == x.size() && x.size() == y.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] + alpha * y[i];
}

double sum_abs_pow(std::span<const double> f, double p) {
  double acc = 0.0;
  if (p == 1.0) {
    for (double v : f) acc += std::abs(v);
  } else if (p == 2.0) {
    for (double v : f) acc += v * v;
  } else if (p == 3.0) {
    for (double v : f) acc += std::abs(v) * v * v;
  } else if (p == 4.0) {
    for (double v : f) {
      const double sq = v * v;
      acc += sq * sq;
    }
  } else {
    for (double v : f) acc += std::pow(std::abs(v), p);
  }
  return acc;
}

double sum(std::span<const double> f) {
  double acc = 0.0;
  for (double v : f) acc += v;
  return acc;
}

double max_abs(std::span<const double> f) {
  double m = 0.0;
  for (double v : f) {
    const double a = std::abs(v);
    if (a > m || std::isnan(a)) m = a;
  }
  return m;
}

bool all_finite(std::span<const double> f) {
  for (double v : f)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      "scalar", scale_by_symbol, scale_by_imag_symbol, multiply, accumulate_product,
      axpy,     sum_abs_pow,     sum,                  max_abs,  all_finite};
  return table;
}

}  // namespace bflab::kernels
