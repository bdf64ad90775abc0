#include "bflab/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace bflab::kernels {

#if defined(BFLAB_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(BFLAB_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select() {
  const char* env = std::getenv("BFLAB_KERNELS");
  const std::string choice = env ? env : "auto";
  if (choice == "scalar") return scalar_kernels();
  if (choice == "avx2") {
    if (const auto* t = avx2_kernels()) return *t;
    throw std::runtime_error("BFLAB_KERNELS=avx2 requested but AVX2/FMA is unavailable");
  }
  if (choice != "auto" && !choice.empty())
    throw std::runtime_error("BFLAB_KERNELS must be scalar, avx2 or auto, got '" + choice + "'");
  if (const auto* t = avx2_kernels()) return *t;
  return scalar_kernels();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace bflab::kernels
