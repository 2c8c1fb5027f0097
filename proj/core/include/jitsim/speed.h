#pragma once

#include <map>
#include <vector>

#include "jitsim/geometry.h"
#include "jitsim/packet.h"
#include "jitsim/rng.h"
#include "jitsim/sim_time.h"

namespace jitsim {

enum class SpeedVariant { kSpeed, kSpeedT, kSpeedS };

struct SpeedConfig {
  double setpoint_mps = 1000.0;  // relay-speed setpoint S
  double beacon_period_s = 1.0;
  SpeedVariant variant = SpeedVariant::kSpeed;
};

// A beacon-known neighbor evaluated against a destination: geographic
// progress and the current one-hop delay estimate give its relay speed.
struct SpeedCandidate {
  NodeId id = kNoNode;
  double progress_m = 0.0;
  double hop_delay_us = 0.0;
  double speed_mps = 0.0;
};

// Neighbors learned from beacons. Entries never expire within a run.
class SpeedTable {
 public:
  void learn(NodeId neighbor, const Position& pos) { known_[neighbor] = pos; }
  bool empty() const { return known_.empty(); }
  std::size_t size() const { return known_.size(); }

  // Members of the forwarding set: known neighbors with positive progress
  // toward dest, with relay speed = progress / hop_delay. Ordered by id.
  template <typename DelayFn>
  std::vector<SpeedCandidate> forwarding_set(const Position& self,
                                             const Position& dest,
                                             DelayFn&& delay_us) const {
    std::vector<SpeedCandidate> fs;
    const double own = distance_m(self, dest);
    for (const auto& [id, pos] : known_) {
      const double progress = own - distance_m(pos, dest);
      if (progress <= 0.0) continue;
      const double d = delay_us(id);
      fs.push_back(SpeedCandidate{id, progress, d,
                                  progress / (d / 1e6)});
    }
    return fs;
  }

 private:
  std::map<NodeId, Position> known_;
};

struct SpeedDecision {
  enum class Kind { kForward, kDropVoid, kDropSetpoint };
  Kind kind = Kind::kDropVoid;
  NodeId next_hop = kNoNode;
};

// Probability the simplified relay-ratio controller drops a packet that
// cannot be forwarded at the setpoint: 1 - |{s_i >= S}| / |FS|.
double relay_drop_probability(const std::vector<SpeedCandidate>& fs,
                              double setpoint_mps);

// Stateless non-deterministic geographic forwarding. Candidates at or
// above the setpoint are chosen randomly, weighted by relay speed; with
// none, the relay-ratio controller drops, else the fastest member of the
// forwarding set carries the packet.
SpeedDecision sngf_select(const std::vector<SpeedCandidate>& fs,
                          double setpoint_mps, Rng& rng);

// Minimal one-hop delay first; ties by lowest id.
SpeedDecision speed_t_select(const std::vector<SpeedCandidate>& fs);

// Maximal one-hop progress speed first; ties by lowest id.
SpeedDecision speed_s_select(const std::vector<SpeedCandidate>& fs);

}  // namespace jitsim
