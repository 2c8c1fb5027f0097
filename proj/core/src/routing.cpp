#include "jitsim/routing.h"

#include <stdexcept>

namespace jitsim {

bool SpState::on_advert(std::uint32_t seq, int sender_hops, NodeId from) {
  if (is_sink_) return false;
  const int hops = sender_hops + 1;
  if (!entry_.valid() || seq > entry_.advert_seq) {
    entry_ = RouteEntry{from, hops, seq};
    return true;
  }
  if (seq == entry_.advert_seq && hops < entry_.hop_count) {
    entry_ = RouteEntry{from, hops, seq};
    return true;
  }
  return false;
}

NodeId gf_next_hop(NodeId self, NodeId sink, const Medium& medium) {
  const Topology& topo = medium.topology();
  const double own = topo.dist(self, sink);
  NodeId best = kNoNode;
  double best_d = own;
  for (const auto& [nbr, d_to_self] : medium.neighbors_of(self)) {
    const double d = topo.dist(nbr, sink);
    if (d < best_d) {  // strictly closer; first hit wins ties (ids ascend)
      best_d = d;
      best = nbr;
    }
  }
  return best;
}

double eetd_us(double etd_us_in, const DistanceInfo& dist) {
  if (dist.one_hop <= 0.0) {
    throw std::invalid_argument("eetd: one-hop distance must be positive");
  }
  return etd_us_in * (dist.e2e / dist.one_hop);
}

}  // namespace jitsim
