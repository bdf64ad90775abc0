// AVX2/FMA variants. Compiled with -mavx2 -mfma; only reached through the
// dispatch table after a runtime CPU check.

#include <immintrin.h>

#include <cassert>
#include <cmath>

#include "bflab/kernels.hpp"

namespace bflab::kernels {
namespace {

constexpr std::size_t kLanes = 4;

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d vabs(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

void scale_by_symbol(std::span<cplx> spec, std::span<const double> symbol) {
  assert(spec.size() == symbol.size());
  double* z = reinterpret_cast<double*>(spec.data());
  const std::size_t n = spec.size();
  std::size_t k = 0;
  // two complex values per register: (re0, im0, re1, im1)
  for (; k + 2 <= n; k += 2) {
    const __m128d s = _mm_loadu_pd(symbol.data() + k);
    const __m256d sym = _mm256_permute4x64_pd(_mm256_castpd128_pd256(s), 0b01010000);
    const __m256d v = _mm256_loadu_pd(z + 2 * k);
    _mm256_storeu_pd(z + 2 * k, _mm256_mul_pd(v, sym));
  }
  for (; k < n; ++k) spec[k] *= symbol[k];
}

void scale_by_imag_symbol(std::span<cplx> spec, std::span<const double> symbol) {
  assert(spec.size() == symbol.size());
  double* z = reinterpret_cast<double*>(spec.data());
  const std::size_t n = spec.size();
  const __m256d flip = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m128d s = _mm_loadu_pd(symbol.data() + k);
    const __m256d sym = _mm256_permute4x64_pd(_mm256_castpd128_pd256(s), 0b01010000);
    const __m256d v = _mm256_loadu_pd(z + 2 * k);
    // (re, im) -> (-im, re)
    const __m256d swapped = _mm256_xor_pd(_mm256_permute_pd(v, 0b0101), flip);
    _mm256_storeu_pd(z + 2 * k, _mm256_mul_pd(swapped, sym));
  }
  for (; k < n; ++k) {
    const double re = spec[k].real();
    const double im = spec[k].imag();
    spec[k] = cplx(-im * symbol[k], re * symbol[k]);
  }
}

void multiply(std::span<double> out, std::span<const double> a, std::span<const double> b) {
  assert(out.size() == a.size() && a.size() == b.size());
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_pd(out.data() + i,
                     _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void accumulate_product(std::span<double> out, std::span<const double> a,
                        std::span<const double> b, double coef) {
  assert(out.size() == a.size() && a.size() == b.size());
  const std::size_t n = out.size();
  const __m256d c = _mm256_set1_pd(coef);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
    _mm256_storeu_pd(out.data() + i, _mm256_fmadd_pd(c, ab, _mm256_loadu_pd(out.data() + i)));
  }
  for (; i < n; ++i) out[i] += coef * (a[i] * b[i]);
}

void axpy(std::span<double> out, std::span<const double> x, double alpha,
          std::span<const double> y) {
  assert(out.size() == x.size() && x.size() == y.size());
  const std::size_t n = out.size();
  const __m256d al = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_pd(out.data() + i, _mm256_fmadd_pd(al, _mm256_loadu_pd(y.data() + i),
                                                      _mm256_loadu_pd(x.data() + i)));
  }
  for (; i < n; ++i) out[i] = x[i] + alpha * y[i];
}

template <int P>
inline __m256d pow_abs(__m256d v) {
  if constexpr (P == 1) {
    return vabs(v);
  } else if constexpr (P == 2) {
    return _mm256_mul_pd(v, v);
  } else if constexpr (P == 3) {
    return _mm256_mul_pd(vabs(v), _mm256_mul_pd(v, v));
  } else {
    const __m256d sq = _mm256_mul_pd(v, v);
    return _mm256_mul_pd(sq, sq);
  }
}

template <int P>
double sum_abs_pow_fixed(std::span<const double> f) {
  const std::size_t n = f.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    acc = _mm256_add_pd(acc, pow_abs<P>(_mm256_loadu_pd(f.data() + i)));
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += std::pow(std::abs(f[i]), P);
  return hsum(acc) + tail;
}

double sum_abs_pow(std::span<const double> f, double p) {
  if (p == 1.0) return sum_abs_pow_fixed<1>(f);
  if (p == 2.0) return sum_abs_pow_fixed<2>(f);
  if (p == 3.0) return sum_abs_pow_fixed<3>(f);
  if (p == 4.0) return sum_abs_pow_fixed<4>(f);
  return scalar_kernels().sum_abs_pow(f, p);
}

double sum(std::span<const double> f) {
  const std::size_t n = f.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) acc = _mm256_add_pd(acc, _mm256_loadu_pd(f.data() + i));
  double tail = 0.0;
  for (; i < n; ++i) tail += f[i];
  return hsum(acc) + tail;
}

double max_abs(std::span<const double> f) {
  const std::size_t n = f.size();
  __m256d m = _mm256_setzero_pd();
  __m256d nan_seen = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d v = vabs(_mm256_loadu_pd(f.data() + i));
    nan_seen = _mm256_or_pd(nan_seen, _mm256_cmp_pd(v, v, _CMP_UNORD_Q));
    m = _mm256_max_pd(m, v);
  }
  if (_mm256_movemask_pd(nan_seen) != 0) return std::nan("");
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, m);
  double result = 0.0;
  for (double v : lanes) result = v > result ? v : result;
  for (; i < n; ++i) {
    const double a = std::abs(f[i]);
    if (std::isnan(a)) return a;
    if (a > result) result = a;
  }
  return result;
}

bool all_finite(std::span<const double> f) {
  const std::size_t n = f.size();
  __m256d bad = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d v = _mm256_loadu_pd(f.data() + i);
    // v - v is NaN exactly for inf and NaN
    const __m256d d = _mm256_sub_pd(v, v);
    bad = _mm256_or_pd(bad, _mm256_cmp_pd(d, d, _CMP_UNORD_Q));
  }
  if (_mm256_movemask_pd(bad) != 0) return false;
  for (; i < n; ++i)
    if (!std::isfinite(f[i])) return false;
  return true;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{
      "avx2", scale_by_symbol, scale_by_imag_symbol, multiply, accumulate_product,
      axpy,   sum_abs_pow,     sum,                  max_abs,  all_finite};
  return table;
}

}  // namespace bflab::kernels
