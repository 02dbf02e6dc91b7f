#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace candy::kernels {

const KernelTable* avx2_kernels() noexcept {
#if defined(CANDY_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() noexcept {
  static const KernelTable& chosen = [&]() -> const KernelTable& {
    const char* forced = std::getenv("CANDY_KERNELS");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_kernels();
    if (const auto* fast = avx2_kernels()) return *fast;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace candy::kernels
