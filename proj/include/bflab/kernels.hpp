#pragma once

// Data-parallel inner loops shared by the spectral layer and the integrator.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2/FMA variant. The active table is chosen once at first use from the
// CPU feature bits; the environment variable BFLAB_KERNELS=scalar|avx2 forces
// a variant. The variants agree to rounding (see tests/test_kernels.cpp) but
// are not bit-identical: the AVX2 reductions use four partial sums and the
// updates use fused multiply-add.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace bflab::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;

  // spec[k] *= symbol[k]
  void (*scale_by_symbol)(std::span<cplx> spec, std::span<const double> symbol);
  // spec[k] *= i * symbol[k]
  void (*scale_by_imag_symbol)(std::span<cplx> spec, std::span<const double> symbol);
  // out[i] = a[i] * b[i]
  void (*multiply)(std::span<double> out, std::span<const double> a, std::span<const double> b);
  // out[i] += coef * a[i] * b[i]
  void (*accumulate_product)(std::span<double> out, std::span<const double> a,
                             std::span<const double> b, double coef);
  // out[i] = x[i] + alpha * y[i]
  void (*axpy)(std::span<double> out, std::span<const double> x, double alpha,
               std::span<const double> y);
  // sum |f[i]|^p; integer p in {1,2,3,4} is vectorized, other p fall back to pow
  double (*sum_abs_pow)(std::span<const double> f, double p);
  double (*sum)(std::span<const double> f);
  double (*max_abs)(std::span<const double> f);
  bool (*all_finite)(std::span<const double> f);
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

// The table used by the library. Selected once, thread-safe.
const KernelTable& active();

// Reinterpret a complex array as interleaved doubles (re, im, re, im, ...).
inline std::span<double> as_reals(std::span<cplx> z) {
  return {reinterpret_cast<double*>(z.data()), 2 * z.size()};
}
inline std::span<const double> as_reals(std::span<const cplx> z) {
  return {reinterpret_cast<const double*>(z.data()), 2 * z.size()};
}

}  // namespace bflab::kernels
