#pragma once

#include <cmath>

namespace jitsim {

// Planar coordinates in meters within the deployment area.
struct Position {
  double x = 0.0;
  double y = 0.0;
};

inline double distance_m(const Position& a, const Position& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace jitsim
