#include "jitsim/rng.h"

#include <stdexcept>

namespace jitsim {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) {
    throw std::invalid_argument("Rng::uniform: empty range");
  }
  const std::uint64_t span =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) {
    // [INT64_MIN, INT64_MAX]: every 64-bit value is acceptable.
    return static_cast<std::int64_t>(next_u64());
  }
  // Accept draws in [2^64 mod span, 2^64); that interval's size is a
  // multiple of span, so the modulus is exactly uniform.
  const std::uint64_t cutoff = (0ULL - span) % span;
  std::uint64_t r = next_u64();
  while (r < cutoff) {
    r = next_u64();
  }
  return lo + static_cast<std::int64_t>(r % span);
}

}  // namespace jitsim
