#include "kernels_impl.hpp"

namespace candy::kernels {

namespace {

void threshold_mask(std::span<const std::uint64_t> counts,
                    std::span<const std::uint64_t> thresholds,
                    std::span<std::uint64_t> mask) {
  for (std::size_t i = 0; i < counts.size(); ++i) mask[i] = counts[i] >= thresholds[i] ? 1 : 0;
}

void gather_incoming(std::span<const std::uint32_t> offsets,
                     std::span<const std::uint32_t> adjacency,
                     std::span<const std::uint64_t> mask,
                     std::span<std::uint64_t> incoming) {
  for (std::size_t v = 0; v < incoming.size(); ++v) {
    std::uint64_t sum = 0;
    for (auto k = offsets[v]; k < offsets[v + 1]; ++k) sum += mask[adjacency[k]];
    incoming[v] = sum;
  }
}

void apply_round(std::span<const std::uint64_t> counts,
                 std::span<const std::uint64_t> degrees,
                 std::span<const std::uint64_t> mask,
                 std::span<const std::uint64_t> incoming,
                 std::span<std::uint64_t> out) {
  for (std::size_t v = 0; v < counts.size(); ++v)
    out[v] = counts[v] - (mask[v] ? degrees[v] : 0) + incoming[v];
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static constexpr KernelTable table{"scalar", threshold_mask, gather_incoming, apply_round};
  return table;
}

}  // namespace candy::kernels
