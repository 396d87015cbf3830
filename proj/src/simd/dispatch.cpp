#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"

namespace cuelab::simd {

namespace {

bool cpu_has_avx2() {
#if defined(CUELAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelSet* initial_selection() {
  const char* env = std::getenv("CUELAB_SIMD");
  const std::string choice = env != nullptr ? env : "auto";
  if (choice == "scalar") {
    return &scalar_kernels();
  }
  if (const KernelSet* fast = avx2_kernels()) {
    return fast;
  }
  return &scalar_kernels();
}

std::atomic<const KernelSet*>& active_slot() {
  static std::atomic<const KernelSet*> slot{initial_selection()};
  return slot;
}

}  // namespace

const KernelSet* avx2_kernels() {
#if defined(CUELAB_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &avx2_kernels_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active_kernels() { return *active_slot().load(std::memory_order_acquire); }

bool select_kernels(std::string_view name) {
  const KernelSet* chosen = nullptr;
  if (name == "scalar") {
    chosen = &scalar_kernels();
  } else if (name == "avx2") {
    chosen = avx2_kernels();
  } else if (name == "auto") {
    chosen = avx2_kernels() != nullptr ? avx2_kernels() : &scalar_kernels();
  }
  if (chosen == nullptr) {
    return false;
  }
  active_slot().store(chosen, std::memory_order_release);
  return true;
}

}  // namespace cuelab::simd
