#pragma once

#include <cstdint>
#include <vector>

#include "jitsim/geometry.h"
#include "jitsim/packet.h"

namespace jitsim {

enum class TopologyKind { kGrid, kRandom };
enum class SinkPlacement { kNwCorner, kCenter };

struct TopologySpec {
  TopologyKind kind = TopologyKind::kGrid;
  int node_count = 100;      // sensors; random deployments append the sink
  double area_side_m = 1000.0;
  SinkPlacement sink = SinkPlacement::kNwCorner;
  std::uint64_t seed = 1;    // placement seed, random deployments only
};

// Node positions plus the sink id. Grid deployments are an equally spaced
// lattice with the sink at the corner node; random deployments draw
// node_count uniform positions and append the sink at the area center.
class Topology {
 public:
  static Topology build(const TopologySpec& spec);

  int size() const { return static_cast<int>(pos_.size()); }
  NodeId sink() const { return sink_; }
  const Position& pos(NodeId n) const { return pos_[static_cast<size_t>(n)]; }
  double dist(NodeId a, NodeId b) const { return distance_m(pos_[a], pos_[b]); }

 private:
  std::vector<Position> pos_;
  NodeId sink_ = kNoNode;
};

}  // namespace jitsim
