#include <doctest.h>

#include <cmath>
#include <limits>

#include "bflab/kernels.hpp"
#include "test_util.hpp"

using namespace bflab::kernels;
using testutil::random_vector;

namespace {

const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 31, 1024, 1027};

std::vector<cplx> random_complex(std::size_t n, std::uint64_t seed) {
  const auto re = random_vector(n, seed), im = random_vector(n, seed + 7);
  std::vector<cplx> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = {re[i], im[i]};
  return z;
}

double max_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("active kernel table is one of the built variants") {
  const auto& act = active();
  CHECK((act.name == scalar_kernels().name || (avx2_kernels() && act.name == avx2_kernels()->name)));
}

TEST_CASE("scalar kernels match direct formulas") {
  const auto& k = scalar_kernels();
  std::vector<cplx> z{{1, 2}, {3, -4}};
  const std::vector<double> sym{2.0, -0.5};
  k.scale_by_symbol(z, sym);
  CHECK(z[0] == cplx(2, 4));
  CHECK(z[1] == cplx(-1.5, 2));
  k.scale_by_imag_symbol(z, sym);
  CHECK(z[0] == cplx(-8, 4));
  CHECK(z[1] == cplx(1, 0.75));
  const std::vector<double> a{1, -2, 3}, b{4, 5, -6};
  std::vector<double> out(3);
  k.multiply(out, a, b);
  CHECK(out == std::vector<double>{4, -10, -18});
  k.accumulate_product(out, a, b, 0.5);
  CHECK(out == std::vector<double>{6, -15, -27});
  k.axpy(out, a, 2.0, b);
  CHECK(out == std::vector<double>{9, 8, -9});
  CHECK(k.sum(a) == 2.0);
  CHECK(k.sum_abs_pow(a, 1.0) == 6.0);
  CHECK(k.sum_abs_pow(a, 2.0) == 14.0);
  CHECK(k.sum_abs_pow(a, 3.0) == 36.0);
  CHECK(k.sum_abs_pow(a, 4.0) == 98.0);
  CHECK(k.sum_abs_pow(a, 1.5) == doctest::Approx(1 + std::pow(2, 1.5) + std::pow(3, 1.5)));
  CHECK(k.max_abs(a) == 3.0);
  CHECK(k.all_finite(a));
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  const KernelTable* simd = avx2_kernels();
  if (!simd) {
    MESSAGE("AVX2 variant unavailable on this host; equivalence test skipped");
    return;
  }
  const auto& ref = scalar_kernels();
  for (std::size_t n : kSizes) {
    CAPTURE(n);
    const auto a = random_vector(n, 3 * n + 1), b = random_vector(n, 5 * n + 2), sym = random_vector(n, 7 * n + 3);

    auto z1 = random_complex(n, n + 11), z2 = z1;
    ref.scale_by_symbol(z1, sym);
    simd->scale_by_symbol(z2, sym);
    CHECK(max_diff(as_reals(std::span<const cplx>(z1)), as_reals(std::span<const cplx>(z2))) == 0.0);
    ref.scale_by_imag_symbol(z1, sym);
    simd->scale_by_imag_symbol(z2, sym);
    CHECK(max_diff(as_reals(std::span<const cplx>(z1)), as_reals(std::span<const cplx>(z2))) == 0.0);

    std::vector<double> o1(n), o2(n);
    ref.multiply(o1, a, b);
    simd->multiply(o2, a, b);
    CHECK(max_diff(o1, o2) == 0.0);
    ref.accumulate_product(o1, a, b, 0.3);
    simd->accumulate_product(o2, a, b, 0.3);
    CHECK(max_diff(o1, o2) <= 1e-15);
    ref.axpy(o1, a, -1.7, b);
    simd->axpy(o2, a, -1.7, b);
    CHECK(max_diff(o1, o2) <= 1e-15);

    const double scale = std::max<double>(1.0, static_cast<double>(n));
    CHECK(std::abs(ref.sum(a) - simd->sum(a)) <= 1e-14 * scale);
    for (double p : {1.0, 2.0, 3.0, 4.0, 2.5}) {
      CAPTURE(p);
      CHECK(std::abs(ref.sum_abs_pow(a, p) - simd->sum_abs_pow(a, p)) <= 1e-14 * scale);
    }
    CHECK(ref.max_abs(a) == simd->max_abs(a));
    CHECK(ref.all_finite(a) == simd->all_finite(a));
  }
}

TEST_CASE("non-finite values are detected at every position") {
  std::vector<const KernelTable*> tables{&scalar_kernels()};
  if (avx2_kernels()) tables.push_back(avx2_kernels());
  for (const auto* k : tables) {
    CAPTURE(k->name);
    for (std::size_t n : {1u, 5u, 8u, 13u}) {
      for (std::size_t pos = 0; pos < n; ++pos) {
        std::vector<double> v(n, 1.0);
        v[pos] = std::numeric_limits<double>::infinity();
        CHECK_FALSE(k->all_finite(v));
        v[pos] = std::numeric_limits<double>::quiet_NaN();
        CHECK_FALSE(k->all_finite(v));
        CHECK(std::isnan(k->max_abs(v)));
      }
    }
  }
}
