#pragma once

#include <cstdint>
#include <functional>
#include <list>
#include <utility>
#include <vector>

#include "jitsim/engine.h"
#include "jitsim/radio.h"
#include "jitsim/topology.h"

namespace jitsim {

class Mac;

// Shared wireless channel. Tracks which transmissions are on the air,
// drives per-node carrier sense (busy/idle transitions), and corrupts a
// reception whenever any other transmission audible at the receiver
// overlaps its airtime. A node's own transmission is audible to itself,
// which also makes it deaf while sending.
class Medium {
 public:
  Medium(Engine& engine, const RadioConfig& cfg, const Topology& topo);

  void attach(NodeId node, Mac* mac);
  void set_delivery_handler(std::function<void(NodeId, const Frame&)> fn) {
    deliver_ = std::move(fn);
  }

  // Neighbor relation uses a closed ball: distance <= tx_range, self
  // excluded. Pairs are (id, distance), ordered by id.
  const std::vector<std::pair<NodeId, double>>& neighbors_of(NodeId n) const {
    return tx_neighbors_[static_cast<size_t>(n)];
  }
  bool in_tx_range(NodeId a, NodeId b) const;

  bool channel_busy(NodeId n) const { return audible_[static_cast<size_t>(n)] > 0; }
  SimTime idle_since(NodeId n) const { return idle_since_[static_cast<size_t>(n)]; }

  // Puts a frame on the air for air_us; the channel additionally stays
  // busy for busy_extra_us after that (the implicit ACK exchange).
  // on_done fires at air end + busy_extra with the unicast outcome
  // (always true for broadcast).
  void start_tx(NodeId src, Frame frame, SimTime air_us, SimTime busy_extra_us,
                std::function<void(bool delivered)> on_done);

  const Topology& topology() const { return topo_; }
  const RadioConfig& config() const { return cfg_; }

 private:
  struct ActiveTx {
    NodeId src;
    Frame frame;
    SimTime air_end;
    std::vector<NodeId> rx_set;        // nodes within tx_range of src
    std::vector<bool> corrupted;       // parallel to rx_set
    std::function<void(bool)> on_done;
    bool delivered = false;
  };

  void resolve_air_end(std::list<ActiveTx>::iterator it);
  void release_listeners(NodeId src);

  Engine& engine_;
  const RadioConfig& cfg_;
  const Topology& topo_;
  std::vector<Mac*> macs_;
  std::vector<int> audible_;       // transmissions currently audible per node
  std::vector<SimTime> idle_since_;
  std::vector<std::vector<std::pair<NodeId, double>>> tx_neighbors_;
  std::vector<std::vector<NodeId>> intf_neighbors_;  // includes self
  std::list<ActiveTx> active_;
  std::function<void(NodeId, const Frame&)> deliver_;
};

}  // namespace jitsim
