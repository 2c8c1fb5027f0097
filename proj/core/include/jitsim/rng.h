#pragma once

#include <cstdint>
#include <random>

namespace jitsim {

// Deterministic uniform source for a whole run. std::mt19937_64 has a
// fully specified output sequence, so a seed replays identically on any
// platform. The integer draw below avoids std::uniform_int_distribution,
// whose mapping is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform integer in [lo, hi], both ends included. Rejection-sampled so
  // every value is equally likely. Throws std::invalid_argument when the
  // range is empty (lo > hi).
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

  // Uniform double in [0, 1) with 53 significant bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace jitsim
