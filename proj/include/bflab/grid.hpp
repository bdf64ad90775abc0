#pragma once

#include <cstddef>

namespace bflab {

/// Uniform periodic grid on [-L, L) with N points.
///
/// The discrete frequencies are xi_k = pi k / L for k in [-N/2, N/2). Fields
/// store the non-negative half k = 0..N/2 of their (Hermitian) spectrum, so
/// spectral arrays have spectrum_size() = N/2 + 1 entries and entry N/2 is
/// the Nyquist mode.
class Grid {
 public:
  /// Throws std::invalid_argument unless N is even, N >= 16 and L > 0.
  static Grid make(double half_length, std::size_t points);

  double half_length() const noexcept { return half_length_; }
  double length() const noexcept { return 2.0 * half_length_; }
  std::size_t size() const noexcept { return points_; }
  std::size_t spectrum_size() const noexcept { return points_ / 2 + 1; }
  double spacing() const noexcept { return length() / static_cast<double>(points_); }

  /// Sample location x_j = -L + j dx.
  double position(std::size_t j) const noexcept {
    return -half_length_ + static_cast<double>(j) * spacing();
  }

  /// Frequency of half-spectrum index k (k = 0..N/2).
  double frequency(std::size_t k) const noexcept;

  /// Frequency of signed index k in [-N/2, N/2).
  double signed_frequency(long k) const noexcept;

  double frequency_step() const noexcept;
  double nyquist() const noexcept;

  /// Half-spectrum indices kept by the 2/3 dealiasing rule are k <= dealias_index().
  std::size_t dealias_index() const noexcept;
  double dealias_cutoff() const noexcept { return 2.0 * nyquist() / 3.0; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Grid(double half_length, std::size_t points) : half_length_(half_length), points_(points) {}

  double half_length_;
  std::size_t points_;
};

/// Throws std::invalid_argument when the grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace bflab
