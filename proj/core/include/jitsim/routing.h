#pragma once

#include <cstdint>
#include <optional>

#include "jitsim/medium.h"
#include "jitsim/packet.h"
#include "jitsim/topology.h"

namespace jitsim {

enum class RoutingMode { kSp, kGf, kSpeed };

// How the GF one-hop distance entering EETD is defined: the geographic
// progress the chosen next hop makes (default), or simply the radio range.
enum class GfOneHop { kProgress, kRange };

// Next-hop entry built from sink advertisement floods (SP).
struct RouteEntry {
  NodeId next_hop = kNoNode;
  int hop_count = -1;  // to the sink; 0 at the sink itself
  std::uint32_t advert_seq = 0;
  bool valid() const { return next_hop != kNoNode; }
};

// Per-node SP state machine. Adverts carry (seq, sender's hop count); a
// newer seq replaces the entry unconditionally, an equal seq only on a
// hop-count improvement. The caller rebroadcasts on every accepted update.
class SpState {
 public:
  // Marks this node as the advert origin (hop 0, next hop = self).
  void make_sink(NodeId self) { entry_ = RouteEntry{self, 0, 0}; is_sink_ = true; }

  // Returns true when the advert updated the entry.
  bool on_advert(std::uint32_t seq, int sender_hops, NodeId from);

  const RouteEntry& entry() const { return entry_; }

 private:
  RouteEntry entry_;
  bool is_sink_ = false;
};

// Greedy geographic next hop: the neighbor strictly closest to the sink,
// ties broken by lowest id. kNoNode signals a void.
NodeId gf_next_hop(NodeId self, NodeId sink, const Medium& medium);

// Distances feeding the scheduler, in the routing protocol's metric
// (hops for SP with one_hop == 1, meters for GF).
struct DistanceInfo {
  double e2e = 0.0;       // anchor -> sink (source or forwarder, per policy)
  double one_hop = 0.0;   // one-hop distance under the protocol metric
  double remaining = 0.0; // current node -> sink
};

// EETD = ETD * (end-to-end distance / one-hop distance): the share of the
// deadline budget the scheduler cannot control. Throws on one_hop <= 0.
double eetd_us(double etd_us, const DistanceInfo& dist);

}  // namespace jitsim
