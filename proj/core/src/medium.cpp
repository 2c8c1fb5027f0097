#include "jitsim/medium.h"

#include <algorithm>

#include "jitsim/mac.h"

namespace jitsim {

Medium::Medium(Engine& engine, const RadioConfig& cfg, const Topology& topo)
    : engine_(engine), cfg_(cfg), topo_(topo) {
  const size_t n = static_cast<size_t>(topo.size());
  macs_.assign(n, nullptr);
  audible_.assign(n, 0);
  // Treat the channel as idle since long before t=0 so the first frame of
  // a quiet node transmits after a plain DIFS.
  idle_since_.assign(n, -kUsPerSec * 3600);
  tx_neighbors_.assign(n, {});
  intf_neighbors_.assign(n, {});
  for (NodeId a = 0; a < topo.size(); ++a) {
    intf_neighbors_[a].push_back(a);  // self: transmitting deafens the sender
    for (NodeId b = 0; b < topo.size(); ++b) {
      if (a == b) continue;
      const double d = topo.dist(a, b);
      if (d <= cfg.tx_range_m) {
        tx_neighbors_[a].emplace_back(b, d);
      }
      if (d <= cfg.interference_range_m) {
        intf_neighbors_[a].push_back(b);
      }
    }
  }
}

void Medium::attach(NodeId node, Mac* mac) {
  macs_[static_cast<size_t>(node)] = mac;
}

bool Medium::in_tx_range(NodeId a, NodeId b) const {
  return topo_.dist(a, b) <= cfg_.tx_range_m;
}

void Medium::start_tx(NodeId src, Frame frame, SimTime air_us,
                      SimTime busy_extra_us,
                      std::function<void(bool delivered)> on_done) {
  const SimTime now = engine_.now();
  active_.emplace_back();
  auto it = std::prev(active_.end());
  it->src = src;
  it->frame = std::move(frame);
  it->air_end = now + air_us;
  it->on_done = std::move(on_done);
  const auto& nbrs = tx_neighbors_[static_cast<size_t>(src)];
  it->rx_set.reserve(nbrs.size());
  for (const auto& [id, d] : nbrs) it->rx_set.push_back(id);
  it->corrupted.assign(it->rx_set.size(), false);

  // Receivers already hearing something (including their own transmission)
  // cannot decode this frame.
  for (size_t i = 0; i < it->rx_set.size(); ++i) {
    if (audible_[static_cast<size_t>(it->rx_set[i])] > 0) {
      it->corrupted[i] = true;
    }
  }
  // And this frame corrupts every in-flight reception it can reach.
  const Position& src_pos = topo_.pos(src);
  for (auto& tx : active_) {
    if (&tx == &*it || engine_.now() >= tx.air_end) continue;
    for (size_t i = 0; i < tx.rx_set.size(); ++i) {
      if (!tx.corrupted[i] &&
          distance_m(src_pos, topo_.pos(tx.rx_set[i])) <=
              cfg_.interference_range_m) {
        tx.corrupted[i] = true;
      }
    }
  }

  for (NodeId l : intf_neighbors_[static_cast<size_t>(src)]) {
    if (++audible_[static_cast<size_t>(l)] == 1 && macs_[static_cast<size_t>(l)]) {
      macs_[static_cast<size_t>(l)]->on_channel_busy();
    }
  }

  engine_.schedule(it->air_end, EventKind::kFrameArrival,
                   [this, it] { resolve_air_end(it); });
  engine_.schedule(it->air_end + busy_extra_us, EventKind::kFrameArrival,
                   [this, it] {
                     release_listeners(it->src);
                     auto done = std::move(it->on_done);
                     const bool ok = it->delivered;
                     active_.erase(it);
                     if (done) done(ok);
                   });
}

void Medium::resolve_air_end(std::list<ActiveTx>::iterator it) {
  const Frame& f = it->frame;
  if (f.is_broadcast()) {
    it->delivered = true;
    for (size_t i = 0; i < it->rx_set.size(); ++i) {
      if (!it->corrupted[i] && deliver_) deliver_(it->rx_set[i], f);
    }
    return;
  }
  for (size_t i = 0; i < it->rx_set.size(); ++i) {
    if (it->rx_set[i] == f.dst) {
      if (!it->corrupted[i]) {
        it->delivered = true;
        if (deliver_) deliver_(f.dst, f);
      }
      return;
    }
  }
  // dst out of range: no delivery (the MAC pre-checks this case).
}

void Medium::release_listeners(NodeId src) {
  for (NodeId l : intf_neighbors_[static_cast<size_t>(src)]) {
    if (--audible_[static_cast<size_t>(l)] == 0) {
      idle_since_[static_cast<size_t>(l)] = engine_.now();
      if (macs_[static_cast<size_t>(l)]) {
        macs_[static_cast<size_t>(l)]->on_channel_idle();
      }
    }
  }
}

}  // namespace jitsim
