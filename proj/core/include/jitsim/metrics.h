#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "jitsim/packet.h"
#include "jitsim/sim_time.h"

namespace jitsim {

// Aggregated counters for one traffic class (level 0 = everything).
struct LevelMetrics {
  std::int64_t generated = 0;
  std::int64_t on_time = 0;
  std::int64_t late = 0;
  std::array<std::int64_t, kDropCauseCount> dropped{};  // by DropCause
  SimTime delay_sum_us = 0;   // delivered packets only
  SimTime max_delay_us = 0;
  std::int64_t hops_sum = 0;  // delivered packets only

  std::int64_t dropped_total() const;
  std::int64_t delivered() const { return on_time + late; }
  double miss_ratio() const;
  double drop_ratio() const;
  double avg_delay_ms() const;
  double avg_hops() const;
};

struct RunMetrics {
  LevelMetrics total;
  std::map<int, LevelMetrics> by_level;  // populated for two-level traffic
  std::int64_t duplicate_deliveries = 0;
  SimTime queue_delay_sum_us = 0;  // network-layer queuing, per dispatch
  std::int64_t queue_dispatches = 0;
};

// Per-run accounting: every generated packet ends in exactly one fate.
// finalize() classifies whatever is still unresolved as a drain-end drop
// and checks conservation and the drop <= miss bound.
class MetricsCollector {
 public:
  void record_generated(const Packet& p);
  void record_delivery(const Packet& p, SimTime at);
  void record_drop(const Packet& p, DropCause cause);
  void record_queue_delay(SimTime d);

  // Packets generated but not yet resolved (in flight somewhere).
  std::int64_t unresolved() const { return unresolved_; }

  RunMetrics finalize();

 private:
  enum class Fate : std::uint8_t { kPending, kOnTime, kLate, kDropped };

  LevelMetrics& level_bucket(int level);

  RunMetrics m_;
  std::vector<Fate> fates_;      // indexed by packet id
  std::vector<Packet> pending_;  // copies of unresolved packets, by id
  std::int64_t unresolved_ = 0;
  bool two_level_seen_ = false;
};

}  // namespace jitsim
