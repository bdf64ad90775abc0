#include "bflab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace bflab::fft {
namespace {

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
using fftw_buffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
fftw_buffer<T> allocate(std::size_t count) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * count));
  if (!p) throw std::bad_alloc();
  return fftw_buffer<T>(p);
}

struct Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

// Plan creation is not thread-safe in FFTW; execution with the new-array
// interface is.
std::mutex plan_mutex;

const Plans& plans_for(std::size_t n) {
  static std::map<std::size_t, Plans> cache;
  std::lock_guard lock(plan_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto real = allocate<double>(n);
  auto spec = allocate<fftw_complex>(n / 2 + 1);
  const int size = static_cast<int>(n);
  Plans p;
  p.r2c = fftw_plan_dft_r2c_1d(size, real.get(), spec.get(), FFTW_ESTIMATE);
  p.c2r = fftw_plan_dft_c2r_1d(size, spec.get(), real.get(), FFTW_ESTIMATE);
  if (!p.r2c || !p.c2r) throw std::runtime_error("FFTW plan creation failed");
  return cache.emplace(n, p).first->second;
}

struct Scratch {
  std::size_t n = 0;
  fftw_buffer<double> real;
  fftw_buffer<fftw_complex> spec;
};

Scratch& scratch_for(std::size_t n) {
  thread_local std::map<std::size_t, Scratch> pool;
  auto& s = pool[n];
  if (s.n != n) {
    s.n = n;
    s.real = allocate<double>(n);
    s.spec = allocate<fftw_complex>(n / 2 + 1);
  }
  return s;
}

}  // namespace

void forward(const Grid& grid, std::span<const double> samples, std::span<cplx> spectrum) {
  const std::size_t n = grid.size();
  if (samples.size() != n || spectrum.size() != grid.spectrum_size())
    throw std::invalid_argument("fft::forward: size mismatch");
  const Plans& plans = plans_for(n);
  Scratch& s = scratch_for(n);
  std::copy(samples.begin(), samples.end(), s.real.get());
  fftw_execute_dft_r2c(plans.r2c, s.real.get(), s.spec.get());
  // x_0 = -L contributes the phase exp(i xi_k L) = (-1)^k
  const double dx = grid.spacing();
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const double sign = (k % 2 == 0) ? dx : -dx;
    spectrum[k] = cplx(sign * s.spec[k][0], sign * s.spec[k][1]);
  }
}

void inverse(const Grid& grid, std::span<const cplx> spectrum, std::span<double> samples) {
  const std::size_t n = grid.size();
  if (samples.size() != n || spectrum.size() != grid.spectrum_size())
    throw std::invalid_argument("fft::inverse: size mismatch");
  const Plans& plans = plans_for(n);
  Scratch& s = scratch_for(n);
  const double scale = 1.0 / grid.length();
  const std::size_t last = spectrum.size() - 1;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const double sign = (k % 2 == 0) ? scale : -scale;
    s.spec[k][0] = sign * spectrum[k].real();
    // DC and Nyquist of a real signal carry no imaginary part
    s.spec[k][1] = (k == 0 || k == last) ? 0.0 : sign * spectrum[k].imag();
  }
  fftw_execute_dft_c2r(plans.c2r, s.spec.get(), s.real.get());
  std::copy(s.real.get(), s.real.get() + n, samples.begin());
}

}  // namespace bflab::fft
