#pragma once

#include "candy/kernels.hpp"

namespace candy::kernels {

#if defined(CANDY_HAVE_AVX2)
// Defined in avx2.cpp, which is the only translation unit built with -mavx2.
const KernelTable& avx2_table() noexcept;
#endif

}  // namespace candy::kernels
