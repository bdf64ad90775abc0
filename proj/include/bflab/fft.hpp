#pragma once

// Forward/inverse transform pair on a Grid, backed by FFTW real-to-complex
// plans. Plans use FFTW_ESTIMATE so that repeated runs produce bit-identical
// results.
//
// Normalization (used by every multiplier in the library):
//   spectrum[k] = dx * sum_j f_j exp(-i xi_k x_j),          k = 0..N/2
//   f_j         = 1/(2L) * sum_{k=-N/2}^{N/2-1} spectrum[k] exp(i xi_k x_j)
// so spectrum[k] approximates the continuous transform fhat(xi_k) and
// Parseval reads dx sum |f_j|^2 = 1/(2L) sum_k |spectrum[k]|^2.

#include <complex>
#include <span>

#include "bflab/grid.hpp"

namespace bflab::fft {

using cplx = std::complex<double>;

void forward(const Grid& grid, std::span<const double> samples, std::span<cplx> spectrum);
void inverse(const Grid& grid, std::span<const cplx> spectrum, std::span<double> samples);

}  // namespace bflab::fft
