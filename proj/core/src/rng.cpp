#include "gmatch/rng.hpp"

#include <array>
#include <stdexcept>

namespace gmatch {

Rng::Rng(RngSeed seed) {
  const std::array<std::uint32_t, 4> words = {
      static_cast<std::uint32_t>(seed.base_seed),
      static_cast<std::uint32_t>(seed.base_seed >> 32),
      static_cast<std::uint32_t>(seed.stream_id),
      static_cast<std::uint32_t>(seed.stream_id >> 32),
  };
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
  // Rejection keeps the draw unbiased: discard the top partial bucket.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

}  // namespace gmatch
