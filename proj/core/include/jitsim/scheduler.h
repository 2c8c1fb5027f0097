#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "jitsim/engine.h"
#include "jitsim/packet.h"
#include "jitsim/routing.h"

namespace jitsim {

enum class Policy : std::uint8_t {
  kFifo,    // forward as soon as the MAC is free; no intentional delay
  kJitsS,   // target delay anchored at the source
  kJitsD,   // target delay recomputed from remaining slack at every hop
  kJitsNl,  // non-linear: slack released exponentially toward the sink
  kVmsS,    // velocity class fixed at the source
  kVmsD,    // velocity class recomputed at every hop
};

inline bool is_jits(Policy p) {
  return p == Policy::kJitsS || p == Policy::kJitsD || p == Policy::kJitsNl;
}
inline bool is_vms(Policy p) { return p == Policy::kVmsS || p == Policy::kVmsD; }

struct SchedulerConfig {
  Policy policy = Policy::kJitsD;
  double alpha = 0.7;        // safety factor on the usable slack
  int queue_capacity = 64;   // packets; VMS splits this across 3 classes
  bool idle_detection = false;
  double vms_t1_mps = 500.0;   // velocity class thresholds, strictly increasing
  double vms_t2_mps = 1500.0;

  void validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
      throw std::invalid_argument("alpha must be in (0,1]");
    }
    if (queue_capacity < 1) {
      throw std::invalid_argument("queue_capacity must be >= 1");
    }
    if (!(vms_t1_mps < vms_t2_mps)) {
      throw std::invalid_argument("vms thresholds must be strictly increasing");
    }
  }
};

// How long to hold a packet before handing it to the MAC. `budget` is the
// full end-to-end deadline for the static policy and the remaining slack
// (deadline_abs - now) otherwise; distances follow the same anchoring.
// Never negative: exhausted slack means forward immediately.
SimTime target_delay(Policy policy, SimTime budget_us, double etd_us,
                     const DistanceInfo& dist, double alpha);

// Single priority queue keyed by absolute target transmission time, FIFO
// among equal keys. A timer tracks the head; insertion into a full queue
// dispatches the head immediately instead of dropping anything.
class JitsQueue {
 public:
  struct Item {
    Packet packet;
    NodeId next_hop = kNoNode;
    SimTime enqueued_at = 0;
    SimTime target_tx_at = 0;
  };
  // Invoked for every packet leaving the queue toward the MAC.
  using DispatchFn = std::function<void(const Item&)>;

  JitsQueue(Engine& engine, int capacity, DispatchFn dispatch);
  ~JitsQueue();

  void enqueue(Packet packet, NodeId next_hop, SimTime target_tx_at);

  // Sends the head to the MAC right now (idle-detection path).
  void dispatch_head_now();

  std::size_t size() const { return q_.size(); }
  bool empty() const { return q_.empty(); }
  SimTime head_target() const;

  std::int64_t enqueued_total() const { return enqueued_total_; }
  std::int64_t dispatched_total() const { return dispatched_total_; }

 private:
  void pop_and_dispatch();
  void rearm_timer();

  Engine& engine_;
  int capacity_;
  DispatchFn dispatch_;
  std::map<std::pair<SimTime, std::uint64_t>, Item> q_;
  std::uint64_t tie_seq_ = 0;
  EventHandle timer_;
  std::int64_t enqueued_total_ = 0;
  std::int64_t dispatched_total_ = 0;
};

// Velocity-monotonic priority: required velocity = distance over remaining
// slack; exhausted slack maps straight to the highest class.
int vms_priority(double dist_m, SimTime remaining_slack_us, double t1_mps,
                 double t2_mps);

// Three fixed-priority FIFOs (class 0 served first). Each class holds
// capacity/3 packets; a full class drops the arriving tail.
class VmsQueues {
 public:
  struct Item {
    Packet packet;
    NodeId next_hop = kNoNode;
    int cls = 0;
    SimTime enqueued_at = 0;
  };

  explicit VmsQueues(int total_capacity);

  // False: the class FIFO was full and the packet was not queued.
  bool enqueue(Packet packet, NodeId next_hop, int cls, SimTime now);
  std::optional<Item> pop_highest();
  std::size_t size() const;
  std::size_t size_of(int cls) const { return q_[cls].size(); }
  int per_class_capacity() const { return per_class_; }

 private:
  std::deque<Item> q_[3];
  int per_class_;
};

}  // namespace jitsim
