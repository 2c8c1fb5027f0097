#include "jitsim/topology.h"

#include <cmath>
#include <stdexcept>

#include "jitsim/rng.h"

namespace jitsim {

Topology Topology::build(const TopologySpec& spec) {
  Topology t;
  if (spec.kind == TopologyKind::kGrid) {
    if (spec.sink != SinkPlacement::kNwCorner) {
      throw std::invalid_argument("grid deployments place the sink at the NW corner");
    }
    const int side = static_cast<int>(std::lround(std::sqrt(spec.node_count)));
    if (side * side != spec.node_count) {
      throw std::invalid_argument("grid topology needs a square node count");
    }
    const double spacing = spec.area_side_m / static_cast<double>(side - 1);
    t.pos_.reserve(spec.node_count);
    for (int j = 0; j < side; ++j) {
      for (int i = 0; i < side; ++i) {
        t.pos_.push_back(Position{i * spacing, j * spacing});
      }
    }
    // The corner node (0,0) doubles as the sink.
    t.sink_ = 0;
  } else {
    if (spec.sink != SinkPlacement::kCenter) {
      throw std::invalid_argument("random deployments place the sink at the center");
    }
    Rng rng(spec.seed);
    t.pos_.reserve(spec.node_count + 1);
    for (int i = 0; i < spec.node_count; ++i) {
      const double x = rng.uniform01() * spec.area_side_m;
      const double y = rng.uniform01() * spec.area_side_m;
      t.pos_.push_back(Position{x, y});
    }
    t.pos_.push_back(Position{spec.area_side_m / 2.0, spec.area_side_m / 2.0});
    t.sink_ = static_cast<NodeId>(spec.node_count);
  }
  return t;
}

}  // namespace jitsim
