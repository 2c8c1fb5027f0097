#pragma once

#include <map>
#include <stdexcept>

#include "jitsim/packet.h"
#include "jitsim/sim_time.h"

namespace jitsim {

// Exponentially smoothed one-hop transmission delay (ETD) per neighbor,
// measured from MAC enqueue to acknowledgment. Samples piggyback on every
// successful unicast. Before the first sample a link reports the nominal
// frame airtime; the first real sample replaces it outright to avoid
// cold-start bias.
class LinkEstimator {
 public:
  LinkEstimator(double beta, SimTime nominal_init_us)
      : beta_(beta), nominal_(static_cast<double>(nominal_init_us)) {
    if (beta < 0.0 || beta >= 1.0) {
      throw std::invalid_argument("etd beta must be in [0,1)");
    }
  }

  void add_sample(NodeId neighbor, SimTime sample_us) {
    if (sample_us <= 0) {
      throw std::invalid_argument("etd sample must be positive");
    }
    auto& e = links_[neighbor];
    if (e.samples == 0) {
      e.etd_us = static_cast<double>(sample_us);
    } else {
      e.etd_us = beta_ * e.etd_us + (1.0 - beta_) * static_cast<double>(sample_us);
    }
    ++e.samples;
  }

  double etd_us(NodeId neighbor) const {
    auto it = links_.find(neighbor);
    return (it == links_.end() || it->second.samples == 0) ? nominal_
                                                           : it->second.etd_us;
  }

  int sample_count(NodeId neighbor) const {
    auto it = links_.find(neighbor);
    return it == links_.end() ? 0 : it->second.samples;
  }

 private:
  struct Estimate {
    double etd_us = 0.0;
    int samples = 0;
  };
  std::map<NodeId, Estimate> links_;
  double beta_;
  double nominal_;
};

}  // namespace jitsim
