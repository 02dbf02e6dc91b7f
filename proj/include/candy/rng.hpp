#pragma once

#include <cstdint>
#include <random>

namespace candy {

using Rng = std::mt19937_64;

// Unbiased draw from [0, bound). std::uniform_int_distribution is
// implementation-defined, which would make seeded graphs and samples differ
// between standard libraries.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace candy
