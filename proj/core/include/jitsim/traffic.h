#pragma once

#include <vector>

#include "jitsim/packet.h"
#include "jitsim/rng.h"
#include "jitsim/sim_time.h"
#include "jitsim/topology.h"

namespace jitsim {

enum class TrafficPattern {
  kConstant,
  kBursty,           // emission gated by a common on/off square wave
  kTwoLevel,         // bursty, alternating two deadline classes per source
  kLoadI,            // all sources at 1 packet/s
  kLoadII,           // all sources at 0.5 packet/s
  kLoadIII,          // 10 sources at 1 packet/s
  kCongestionFlows,  // constant base plus high-rate flows at a few nodes
};

struct TrafficSpec {
  TrafficPattern pattern = TrafficPattern::kConstant;
  double rate_pps = 2.0;
  int sources = -1;             // -1: every non-sink node
  SimTime deadline_us = kUsPerSec;  // level-2 deadline for two-level traffic
  SimTime burst_period_us = 10 * kUsPerSec;
  SimTime burst_on_us = 5 * kUsPerSec;
  int congestion_flow_count = 2;
  double congestion_flow_rate_pps = 10.0;
};

// Load presets: I and II load every source at 1 and 0.5 packet/s; III
// loads 10 seeded sources at 1 packet/s.
TrafficSpec load_profile(TrafficPattern which, const TrafficSpec& base);

// One application-layer packet emission.
struct Emission {
  NodeId source = kNoNode;
  SimTime at = 0;
  int level = 0;              // 0 single-class; 1/2 for two-level
  SimTime deadline_rel = 0;
};

// The full deterministic emission schedule for one run, sorted by
// (time, source). Sources get one random phase offset inside their
// emission interval so 100 nodes do not transmit in lockstep; the bursty
// gate stays common to all nodes on purpose.
std::vector<Emission> build_emissions(const TrafficSpec& spec,
                                      const Topology& topo,
                                      SimTime generation_end, Rng& rng);

}  // namespace jitsim
