#pragma once

#include <span>
#include <utility>
#include <vector>

#include "bflab/field.hpp"

namespace bflab {

/// Smooth monotone step built from h(t) = exp(-1/t) (t > 0), h = 0 otherwise:
/// equals 1 for |x| <= inner, 0 for |x| >= outer, C-infinity in between.
double radial_cutoff(double x, double inner, double outer);

/// Low-pass symbol of the dyadic partition: 1 on |xi| <= 1, 0 on |xi| >= 4/3.
double lowpass_symbol(double xi);

/// Ring symbol of block j >= 0: chi(2^{-j-1} xi) - chi(2^{-j} xi), supported in
/// 2^j <= |xi| <= (8/3) 2^j and equal to 1 on (4/3) 2^j <= |xi| <= 2^{j+1}.
double ring_symbol(int j, double xi);

struct BesovParams {
  double s = 2.0;
  double p = 2.0;
  double r = 2.0;

  /// Throws std::invalid_argument unless p, r are in [1, inf) and s is finite.
  void validate() const;
  BesovParams with_s(double new_s) const { return {new_s, p, r}; }
};

/// Littlewood-Paley blocks sampled on a grid. Block -1 is the low-pass part;
/// blocks 0..max_block() are rings. Blocks j <= -2 are identically zero.
class DyadicPartition {
 public:
  explicit DyadicPartition(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  /// Smallest J with 2^{J+1} >= xi_Nyq, so every grid frequency is covered.
  int max_block() const noexcept { return max_block_; }
  /// Symbol values at the half-spectrum frequencies; j in [-1, max_block()].
  std::span<const double> symbol(int j) const;

  /// Delta_j f. Returns zero for j <= -2, throws std::out_of_range for j > max_block().
  Field block(int j, const Field& f) const;

  /// ||Delta_j f||_{L^p} for j = -1..max_block().
  std::vector<std::pair<int, double>> block_profile(const Field& f, double p) const;

  /// (sum_j (2^{js} ||Delta_j f||_p)^r)^{1/r} over j = -1..max_block().
  double besov_norm(const Field& f, const BesovParams& bp) const;

  /// max_k |chi + sum_j psi_j - 1| over the grid frequencies.
  double partition_residual() const;

 private:
  Grid grid_;
  int max_block_;
  std::vector<std::vector<double>> symbols_;  // [0] = chi, [j+1] = psi_j
};

}  // namespace bflab
