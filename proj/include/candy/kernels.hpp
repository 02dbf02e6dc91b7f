#pragma once

// Round kernels. A round of candy passing splits into three data-parallel
// passes over the vertices:
//   1. mask[v]     = counts[v] >= threshold[v]            (threshold = deg)
//   2. incoming[v] = sum of mask[u] over neighbors u of v  (CSR gather)
//   3. out[v]      = counts[v] - deg[v]*mask[v] + incoming[v]
// Pass 1 with threshold = 2*deg also yields the abundant set.
//
// Each pass has a portable scalar reference and an AVX2 variant. The AVX2
// table is selected at runtime when the CPU supports it; every variant must
// produce bit-identical output to the scalar one.

#include <cstdint>
#include <span>
#include <string_view>

namespace candy::kernels {

struct KernelTable {
  std::string_view name;

  /// mask[i] = counts[i] >= thresholds[i] ? 1 : 0. All spans equal length.
  void (*threshold_mask)(std::span<const std::uint64_t> counts,
                         std::span<const std::uint64_t> thresholds,
                         std::span<std::uint64_t> mask);

  /// incoming[v] = sum of mask[adjacency[k]] for k in [offsets[v], offsets[v+1]).
  /// offsets has incoming.size()+1 entries.
  void (*gather_incoming)(std::span<const std::uint32_t> offsets,
                          std::span<const std::uint32_t> adjacency,
                          std::span<const std::uint64_t> mask,
                          std::span<std::uint64_t> incoming);

  /// out[v] = counts[v] - (mask[v] ? degrees[v] : 0) + incoming[v].
  /// Requires counts[v] >= degrees[v] wherever mask[v] is set.
  void (*apply_round)(std::span<const std::uint64_t> counts,
                      std::span<const std::uint64_t> degrees,
                      std::span<const std::uint64_t> mask,
                      std::span<const std::uint64_t> incoming,
                      std::span<std::uint64_t> out);
};

const KernelTable& scalar_kernels() noexcept;

/// nullptr when the build has no AVX2 variant or the CPU lacks AVX2.
const KernelTable* avx2_kernels() noexcept;

/// The table used by the engine. Chosen once: AVX2 when available, unless
/// the environment variable CANDY_KERNELS=scalar forces the reference path.
const KernelTable& active_kernels() noexcept;

}  // namespace candy::kernels
