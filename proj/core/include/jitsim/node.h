#pragma once

#include <deque>
#include <memory>

#include "jitsim/engine.h"
#include "jitsim/link_estimator.h"
#include "jitsim/mac.h"
#include "jitsim/medium.h"
#include "jitsim/metrics.h"
#include "jitsim/routing.h"
#include "jitsim/scheduler.h"
#include "jitsim/speed.h"
#include "jitsim/topology.h"

namespace jitsim {

// Everything a node shares with its peers in one run.
struct NodeEnv {
  Engine& engine;
  Medium& medium;
  const Topology& topo;
  MetricsCollector& metrics;
  RoutingMode routing;
  GfOneHop gf_one_hop;
  SimTime routing_period_us;
  SchedulerConfig sched;
  SpeedConfig speed;
  int data_bytes;
};

// One sensor's network layer: routing state, the forwarding queue of the
// configured policy, and the MAC underneath. The sink variant terminates
// data packets and originates SP advertisement floods.
class Node {
 public:
  Node(NodeId id, NodeEnv& env);

  // Schedules this node's periodic duties (floods at the sink, beacons
  // under SPEED) and hooks idle detection.
  void start();

  // A freshly generated or just-received packet to route and schedule.
  void handle_packet(Packet p);

  // Frame decoded by the radio for this node.
  void on_frame(const Frame& f);

  const SpState& sp() const { return sp_; }
  const LinkEstimator& links() const { return links_; }
  const SpeedTable& speed_table() const { return speed_table_; }
  Mac& mac() { return mac_; }
  const JitsQueue& jits_queue() const { return jits_; }

 private:
  bool is_sink() const { return id_ == env_.topo.sink(); }

  void schedule_with_jits(Packet p, NodeId next_hop);
  void enqueue_vms(Packet p, NodeId next_hop);
  void enqueue_fifo(Packet p);
  void try_pull();  // VMS / FIFO service: feed the MAC one frame at a time
  void send_data(Packet p, NodeId next_hop, int mac_priority);
  void on_data_done(const Frame& f, const MacResult& res);

  DistanceInfo distance_info(const Packet& p, NodeId next_hop) const;
  double gf_progress(NodeId next_hop) const;

  void flood_tick();
  void on_advert(const SpAdvert& advert, NodeId from);
  void rebroadcast_advert();
  void beacon_tick();

  void on_channel_transition(bool busy);
  void maybe_arm_idle_timer();

  NodeId id_;
  NodeEnv& env_;
  Mac mac_;
  LinkEstimator links_;
  SpState sp_;
  SpeedTable speed_table_;
  JitsQueue jits_;
  VmsQueues vms_;
  std::deque<std::pair<Packet, NodeId>> fifo_;
  std::uint32_t flood_seq_ = 0;  // sink only
  bool rebroadcast_pending_ = false;
  EventHandle idle_timer_;
  SimTime idle_threshold_us_ = 0;
};

}  // namespace jitsim
