#pragma once

#include <cstdint>

namespace jitsim {

// Virtual time in integer microseconds since simulation start. Integer
// time keeps runs bit-reproducible across platforms; every second-valued
// quantity in the default configuration converts exactly.
using SimTime = std::int64_t;

inline constexpr SimTime kUsPerMs = 1'000;
inline constexpr SimTime kUsPerSec = 1'000'000;

inline constexpr SimTime from_seconds(double s) {
  return static_cast<SimTime>(s * static_cast<double>(kUsPerSec) + 0.5);
}

inline constexpr SimTime from_ms(double ms) {
  return static_cast<SimTime>(ms * static_cast<double>(kUsPerMs) + 0.5);
}

inline constexpr double to_seconds(SimTime t) {
  return static_cast<double>(t) / static_cast<double>(kUsPerSec);
}

inline constexpr double to_ms(SimTime t) {
  return static_cast<double>(t) / static_cast<double>(kUsPerMs);
}

}  // namespace jitsim
