#pragma once

#include <cstdint>

#include "jitsim/sim_time.h"

namespace jitsim {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;
inline constexpr NodeId kBroadcast = -2;

// Why a packet was abandoned. finalize() folds these onto the CSV drop
// columns: kMac -> dropped_mac; kGfVoid/kNoRoute/kQueueOverflow ->
// dropped_routing; kSpeedVoid/kSpeedSetpoint -> dropped_speed;
// kDrainEnd -> dropped_drain.
enum class DropCause : std::uint8_t {
  kMac,            // retry exhaustion, or unicast with no link
  kGfVoid,         // greedy forwarding found no strictly closer neighbor
  kNoRoute,        // no SP route entry at this node
  kSpeedVoid,      // SPEED forwarding set empty
  kSpeedSetpoint,  // SPEED relay-ratio controller dropped the packet
  kQueueOverflow,  // VMS class queue / plain FIFO tail drop
  kDrainEnd,       // still in flight when the drain window closed
};
inline constexpr int kDropCauseCount = 7;

// A sensed datum in flight. The absolute deadline is fixed at creation;
// level tags two-deadline traffic (0 = single-class).
struct Packet {
  std::int64_t id = -1;
  NodeId source = kNoNode;
  NodeId sink = kNoNode;
  SimTime created_at = 0;
  SimTime deadline_rel = 0;  // end-to-end budget, us
  SimTime deadline_abs = 0;  // created_at + deadline_rel
  int level = 0;
  int hops_traveled = 0;
  // Frozen at the source for the static policies: the end-to-end routing
  // metric (hops under SP, meters under GF) and the VMS-S priority class.
  double src_e2e_metric = 0.0;
  int vms_class_src = 0;
};

}  // namespace jitsim
