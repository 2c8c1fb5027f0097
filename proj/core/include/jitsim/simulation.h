#pragma once

#include <cstdint>

#include "jitsim/metrics.h"
#include "jitsim/radio.h"
#include "jitsim/routing.h"
#include "jitsim/scheduler.h"
#include "jitsim/speed.h"
#include "jitsim/topology.h"
#include "jitsim/traffic.h"

namespace jitsim {

// Everything one run needs. Two runs with equal configs (including the
// seed) produce identical metrics.
struct RunConfig {
  RadioConfig radio;
  SchedulerConfig sched;
  SpeedConfig speed;
  RoutingMode routing = RoutingMode::kSp;
  GfOneHop gf_one_hop = GfOneHop::kProgress;
  SimTime routing_period_us = 5 * kUsPerSec;
  TopologySpec topo;
  TrafficSpec traffic;
  SimTime sim_time_us = 120 * kUsPerSec;  // generation window
  SimTime drain_us = 10 * kUsPerSec;      // let in-flight packets resolve
  std::uint64_t seed = 1;
  int data_bytes = 32;

  void validate() const;
};

RunMetrics run_one(const RunConfig& cfg);

}  // namespace jitsim
