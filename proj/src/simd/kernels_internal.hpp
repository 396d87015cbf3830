#pragma once

#include "cuelab/simd/kernels.hpp"

namespace cuelab::simd {

#if defined(CUELAB_HAVE_AVX2)
// Defined in kernels_avx2.cpp; callers must check CPU support first.
const KernelSet& avx2_kernels_unchecked();
#endif

}  // namespace cuelab::simd
