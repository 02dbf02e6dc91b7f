#include <immintrin.h>

#include "kernels_impl.hpp"

namespace candy::kernels {

namespace {

constexpr std::size_t kLanes = 4;

inline __m256i load(const std::uint64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}
inline void store(std::uint64_t* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

// AVX2 only has a signed 64-bit compare; flipping the sign bit maps the
// unsigned order onto the signed one.
inline __m256i unsigned_less(__m256i a, __m256i b) {
  const __m256i bias = _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ULL));
  return _mm256_cmpgt_epi64(_mm256_xor_si256(b, bias), _mm256_xor_si256(a, bias));
}

void threshold_mask(std::span<const std::uint64_t> counts,
                    std::span<const std::uint64_t> thresholds,
                    std::span<std::uint64_t> mask) {
  const std::size_t n = counts.size();
  const __m256i one = _mm256_set1_epi64x(1);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256i lt = unsigned_less(load(counts.data() + i), load(thresholds.data() + i));
    store(mask.data() + i, _mm256_andnot_si256(lt, one));
  }
  for (; i < n; ++i) mask[i] = counts[i] >= thresholds[i] ? 1 : 0;
}

inline std::uint64_t horizontal_sum(__m256i v) {
  __m128i s = _mm_add_epi64(_mm256_castsi256_si128(v), _mm256_extracti128_si256(v, 1));
  return static_cast<std::uint64_t>(_mm_cvtsi128_si64(s)) +
         static_cast<std::uint64_t>(_mm_extract_epi64(s, 1));
}

void gather_incoming(std::span<const std::uint32_t> offsets,
                     std::span<const std::uint32_t> adjacency,
                     std::span<const std::uint64_t> mask,
                     std::span<std::uint64_t> incoming) {
  const auto* base = reinterpret_cast<const long long*>(mask.data());
  for (std::size_t v = 0; v < incoming.size(); ++v) {
    std::uint32_t k = offsets[v];
    const std::uint32_t end = offsets[v + 1];
    __m256i acc = _mm256_setzero_si256();
    for (; k + kLanes <= end; k += kLanes) {
      __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(adjacency.data() + k));
      acc = _mm256_add_epi64(acc, _mm256_i32gather_epi64(base, idx, 8));
    }
    std::uint64_t sum = horizontal_sum(acc);
    for (; k < end; ++k) sum += mask[adjacency[k]];
    incoming[v] = sum;
  }
}

void apply_round(std::span<const std::uint64_t> counts,
                 std::span<const std::uint64_t> degrees,
                 std::span<const std::uint64_t> mask,
                 std::span<const std::uint64_t> incoming,
                 std::span<std::uint64_t> out) {
  const std::size_t n = counts.size();
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256i all_ones_if_firing = _mm256_sub_epi64(zero, load(mask.data() + i));
    __m256i passed = _mm256_and_si256(load(degrees.data() + i), all_ones_if_firing);
    __m256i next = _mm256_add_epi64(_mm256_sub_epi64(load(counts.data() + i), passed),
                                    load(incoming.data() + i));
    store(out.data() + i, next);
  }
  for (; i < n; ++i) out[i] = counts[i] - (mask[i] ? degrees[i] : 0) + incoming[i];
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static constexpr KernelTable table{"avx2", threshold_mask, gather_incoming, apply_round};
  return table;
}

}  // namespace candy::kernels
