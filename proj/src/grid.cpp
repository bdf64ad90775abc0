#include "bflab/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bflab {

Grid Grid::make(double half_length, std::size_t points) {
  if (points % 2 != 0) throw std::invalid_argument("N must be even");
  if (points < 16) throw std::invalid_argument("N must be at least 16");
  if (!(half_length > 0.0) || !std::isfinite(half_length))
    throw std::invalid_argument("L must be positive and finite");
  return Grid(half_length, points);
}

double Grid::frequency_step() const noexcept { return std::numbers::pi / half_length_; }

double Grid::frequency(std::size_t k) const noexcept {
  return static_cast<double>(k) * frequency_step();
}

double Grid::signed_frequency(long k) const noexcept {
  return static_cast<double>(k) * frequency_step();
}

double Grid::nyquist() const noexcept {
  return std::numbers::pi * static_cast<double>(points_) / (2.0 * half_length_);
}

std::size_t Grid::dealias_index() const noexcept {
  // largest k with 3k < N; for N a multiple of 3 this drops the k = N/3 mode,
  // which would otherwise receive an alias of the product spectrum
  return (points_ - 1) / 3;
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace bflab
