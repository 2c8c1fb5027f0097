#include "jitsim/node.h"

#include <algorithm>

namespace jitsim {

namespace {
constexpr SimTime kRebroadcastJitterUs = 10 * kUsPerMs;
}

Node::Node(NodeId id, NodeEnv& env)
    : id_(id),
      env_(env),
      mac_(env.engine, env.medium, id),
      links_(env.medium.config().etd_beta,
             env.medium.config().airtime_us(env.data_bytes)),
      jits_(env.engine, env.sched.queue_capacity,
            [this](const JitsQueue::Item& item) {
              env_.metrics.record_queue_delay(env_.engine.now() -
                                              item.enqueued_at);
              send_data(item.packet, item.next_hop, -1);
            }),
      vms_(env.sched.queue_capacity) {
  if (is_sink() && env_.routing == RoutingMode::kSp) sp_.make_sink(id_);
  // Idle detection releases the head once the channel stayed quiet for
  // two nominal airtimes.
  idle_threshold_us_ = 2 * env_.medium.config().airtime_us(env_.data_bytes);
}

void Node::start() {
  if (is_sink() && env_.routing == RoutingMode::kSp) {
    flood_tick();
  }
  if (env_.routing == RoutingMode::kSpeed) {
    const SimTime period = from_seconds(env_.speed.beacon_period_s);
    const SimTime phase = env_.engine.rng().uniform(0, period - 1);
    env_.engine.schedule(phase, EventKind::kBeacon, [this] { beacon_tick(); });
  }
  if (env_.sched.idle_detection && is_jits(env_.sched.policy)) {
    mac_.set_channel_listener([this](bool busy) { on_channel_transition(busy); });
  }
}

void Node::handle_packet(Packet p) {
  if (is_sink()) {
    env_.metrics.record_delivery(p, env_.engine.now());
    return;
  }
  const bool at_source = p.hops_traveled == 0 && p.source == id_;

  NodeId next_hop = kNoNode;
  switch (env_.routing) {
    case RoutingMode::kSp: {
      if (!sp_.entry().valid()) {
        env_.metrics.record_drop(p, DropCause::kNoRoute);
        return;
      }
      next_hop = sp_.entry().next_hop;
      if (at_source) {
        p.src_e2e_metric = static_cast<double>(sp_.entry().hop_count);
      }
      break;
    }
    case RoutingMode::kGf: {
      next_hop = gf_next_hop(id_, env_.topo.sink(), env_.medium);
      if (next_hop == kNoNode) {
        env_.metrics.record_drop(p, DropCause::kGfVoid);
        return;
      }
      if (at_source) {
        p.src_e2e_metric = env_.topo.dist(id_, env_.topo.sink());
      }
      break;
    }
    case RoutingMode::kSpeed:
      // Next hop picked at dispatch time, when delay estimates are fresh.
      break;
  }

  if (at_source && is_vms(env_.sched.policy)) {
    p.vms_class_src =
        vms_priority(env_.topo.dist(id_, env_.topo.sink()), p.deadline_rel,
                     env_.sched.vms_t1_mps, env_.sched.vms_t2_mps);
  }

  switch (env_.sched.policy) {
    case Policy::kJitsS:
    case Policy::kJitsD:
    case Policy::kJitsNl:
      schedule_with_jits(std::move(p), next_hop);
      break;
    case Policy::kVmsS:
    case Policy::kVmsD:
      enqueue_vms(std::move(p), next_hop);
      break;
    case Policy::kFifo:
      enqueue_fifo(std::move(p));
      break;
  }
}

DistanceInfo Node::distance_info(const Packet& p, NodeId next_hop) const {
  DistanceInfo d;
  if (env_.routing == RoutingMode::kSp) {
    d.remaining = static_cast<double>(sp_.entry().hop_count);
    d.one_hop = 1.0;
  } else {
    d.remaining = env_.topo.dist(id_, env_.topo.sink());
    d.one_hop = gf_progress(next_hop);
  }
  d.e2e = env_.sched.policy == Policy::kJitsS ? p.src_e2e_metric : d.remaining;
  return d;
}

double Node::gf_progress(NodeId next_hop) const {
  const double range = env_.medium.config().tx_range_m;
  if (env_.gf_one_hop == GfOneHop::kRange) return range;
  const double progress = env_.topo.dist(id_, env_.topo.sink()) -
                          env_.topo.dist(next_hop, env_.topo.sink());
  // Degenerate progress would blow the EETD up; fall back to the range.
  return progress < 1.0 ? range : progress;
}

void Node::schedule_with_jits(Packet p, NodeId next_hop) {
  const SimTime now = env_.engine.now();
  const SimTime budget = env_.sched.policy == Policy::kJitsS
                             ? p.deadline_rel
                             : p.deadline_abs - now;
  const DistanceInfo dist = distance_info(p, next_hop);
  const SimTime delay = target_delay(env_.sched.policy, budget,
                                     links_.etd_us(next_hop), dist,
                                     env_.sched.alpha);
  jits_.enqueue(std::move(p), next_hop, now + delay);
  maybe_arm_idle_timer();
}

void Node::enqueue_vms(Packet p, NodeId next_hop) {
  const int cls =
      env_.sched.policy == Policy::kVmsS
          ? p.vms_class_src
          : vms_priority(env_.topo.dist(id_, env_.topo.sink()),
                         p.deadline_abs - env_.engine.now(),
                         env_.sched.vms_t1_mps, env_.sched.vms_t2_mps);
  if (vms_.size_of(cls) >= static_cast<std::size_t>(vms_.per_class_capacity())) {
    env_.metrics.record_drop(p, DropCause::kQueueOverflow);
    return;
  }
  vms_.enqueue(std::move(p), next_hop, cls, env_.engine.now());
  try_pull();
}

void Node::enqueue_fifo(Packet p) {
  if (static_cast<int>(fifo_.size()) >= env_.sched.queue_capacity) {
    env_.metrics.record_drop(p, DropCause::kQueueOverflow);
    return;
  }
  fifo_.emplace_back(std::move(p), kNoNode);
  try_pull();
}

void Node::try_pull() {
  while (mac_.fully_idle()) {
    if (is_vms(env_.sched.policy)) {
      auto item = vms_.pop_highest();
      if (!item) return;
      env_.metrics.record_queue_delay(env_.engine.now() - item->enqueued_at);
      send_data(std::move(item->packet), item->next_hop, item->cls);
      return;
    }
    if (fifo_.empty()) return;
    auto [p, next] = std::move(fifo_.front());
    fifo_.pop_front();
    if (env_.routing == RoutingMode::kSpeed) {
      const auto fs = speed_table_.forwarding_set(
          env_.topo.pos(id_), env_.topo.pos(env_.topo.sink()),
          [this](NodeId n) { return links_.etd_us(n); });
      SpeedDecision d;
      switch (env_.speed.variant) {
        case SpeedVariant::kSpeed:
          d = sngf_select(fs, env_.speed.setpoint_mps, env_.engine.rng());
          break;
        case SpeedVariant::kSpeedT:
          d = speed_t_select(fs);
          break;
        case SpeedVariant::kSpeedS:
          d = speed_s_select(fs);
          break;
      }
      if (d.kind == SpeedDecision::Kind::kDropVoid) {
        env_.metrics.record_drop(p, DropCause::kSpeedVoid);
        continue;  // service the next queued packet
      }
      if (d.kind == SpeedDecision::Kind::kDropSetpoint) {
        env_.metrics.record_drop(p, DropCause::kSpeedSetpoint);
        continue;
      }
      next = d.next_hop;
    }
    send_data(std::move(p), next, -1);
    return;
  }
}

void Node::send_data(Packet p, NodeId next_hop, int mac_priority) {
  Frame f;
  f.src = id_;
  f.dst = next_hop;
  f.size_bytes = env_.data_bytes;
  f.mac_priority = mac_priority;
  f.body = std::move(p);
  mac_.submit(std::move(f), [this](const Frame& frame, const MacResult& res) {
    on_data_done(frame, res);
  });
}

void Node::on_data_done(const Frame& f, const MacResult& res) {
  if (res.outcome == MacOutcome::kDelivered) {
    // Every acknowledged unicast doubles as an ETD sample.
    const SimTime sample = res.completed_at - res.submitted_at;
    if (sample > 0) links_.add_sample(f.dst, sample);
  } else {
    env_.metrics.record_drop(std::get<Packet>(f.body), DropCause::kMac);
  }
  if (!is_jits(env_.sched.policy)) try_pull();
  maybe_arm_idle_timer();
}

void Node::on_frame(const Frame& f) {
  if (f.is_data()) {
    Packet p = std::get<Packet>(f.body);
    ++p.hops_traveled;
    handle_packet(std::move(p));
    return;
  }
  if (const auto* advert = std::get_if<SpAdvert>(&f.body)) {
    on_advert(*advert, f.src);
    return;
  }
  if (std::holds_alternative<SpeedBeacon>(f.body)) {
    speed_table_.learn(f.src, env_.topo.pos(f.src));
  }
}

void Node::flood_tick() {
  ++flood_seq_;
  Frame f;
  f.src = id_;
  f.dst = kBroadcast;
  f.size_bytes = kAdvertBytes;
  f.body = SpAdvert{flood_seq_, 0};
  mac_.submit(std::move(f), nullptr);
  env_.engine.schedule_in(env_.routing_period_us, EventKind::kFloodTick,
                          [this] { flood_tick(); });
}

void Node::on_advert(const SpAdvert& advert, NodeId from) {
  if (!sp_.on_advert(advert.seq, advert.hop_count, from)) return;
  if (rebroadcast_pending_) return;  // the pending one carries newer state
  rebroadcast_pending_ = true;
  const SimTime jitter = env_.engine.rng().uniform(0, kRebroadcastJitterUs);
  env_.engine.schedule_in(jitter, EventKind::kFloodTick,
                          [this] { rebroadcast_advert(); });
}

void Node::rebroadcast_advert() {
  rebroadcast_pending_ = false;
  Frame f;
  f.src = id_;
  f.dst = kBroadcast;
  f.size_bytes = kAdvertBytes;
  f.body = SpAdvert{sp_.entry().advert_seq, sp_.entry().hop_count};
  mac_.submit(std::move(f), nullptr);
}

void Node::beacon_tick() {
  Frame f;
  f.src = id_;
  f.dst = kBroadcast;
  f.size_bytes = kBeaconBytes;
  f.body = SpeedBeacon{};
  mac_.submit(std::move(f), nullptr);
  env_.engine.schedule_in(from_seconds(env_.speed.beacon_period_s),
                          EventKind::kBeacon, [this] { beacon_tick(); });
}

void Node::on_channel_transition(bool busy) {
  if (busy) {
    if (idle_timer_.valid()) {
      env_.engine.cancel(idle_timer_);
      idle_timer_ = EventHandle{};
    }
    return;
  }
  maybe_arm_idle_timer();
}

void Node::maybe_arm_idle_timer() {
  if (!env_.sched.idle_detection || !is_jits(env_.sched.policy)) return;
  if (idle_timer_.valid() || jits_.empty()) return;
  if (!mac_.fully_idle() || mac_.channel_busy()) return;
  const SimTime at = std::max(env_.engine.now(),
                              mac_.channel_idle_since() + idle_threshold_us_);
  idle_timer_ = env_.engine.schedule(at, EventKind::kTimer, [this] {
    idle_timer_ = EventHandle{};
    if (!jits_.empty() && mac_.fully_idle() && !mac_.channel_busy()) {
      jits_.dispatch_head_now();
    }
    maybe_arm_idle_timer();
  });
}

}  // namespace jitsim
