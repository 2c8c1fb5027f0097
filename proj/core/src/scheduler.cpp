#include "jitsim/scheduler.h"

#include <cmath>

namespace jitsim {

SimTime target_delay(Policy policy, SimTime budget_us, double etd_us,
                     const DistanceInfo& dist, double alpha) {
  if (!is_jits(policy)) return 0;
  const double usable =
      static_cast<double>(budget_us) - eetd_us(etd_us, dist);
  if (usable <= 0.0) return 0;  // exhausted slack: forward immediately
  double delay;
  if (policy == Policy::kJitsNl) {
    delay = usable / std::exp2(dist.remaining / dist.one_hop) * alpha;
  } else {
    // Uniform share of the slack per unit of distance, scaled back to one
    // hop. With hop-count metrics one_hop == 1 and this is (slack-EETD)/h.
    delay = usable / dist.e2e * dist.one_hop * alpha;
  }
  return delay <= 0.0 ? 0 : static_cast<SimTime>(std::llround(delay));
}

JitsQueue::JitsQueue(Engine& engine, int capacity, DispatchFn dispatch)
    : engine_(engine), capacity_(capacity), dispatch_(std::move(dispatch)) {}

JitsQueue::~JitsQueue() {
  if (timer_.valid()) engine_.cancel(timer_);
}

SimTime JitsQueue::head_target() const {
  return q_.empty() ? -1 : q_.begin()->first.first;
}

void JitsQueue::enqueue(Packet packet, NodeId next_hop, SimTime target_tx_at) {
  if (static_cast<int>(q_.size()) >= capacity_) {
    // Queue full: push the head out to the MAC instead of dropping.
    pop_and_dispatch();
  }
  Item item{std::move(packet), next_hop, engine_.now(), target_tx_at};
  q_.emplace(std::make_pair(target_tx_at, tie_seq_++), std::move(item));
  ++enqueued_total_;
  rearm_timer();
}

void JitsQueue::dispatch_head_now() {
  if (q_.empty()) return;
  pop_and_dispatch();
  rearm_timer();
}

void JitsQueue::pop_and_dispatch() {
  auto it = q_.begin();
  Item item = std::move(it->second);
  q_.erase(it);
  ++dispatched_total_;
  dispatch_(item);
}

void JitsQueue::rearm_timer() {
  if (timer_.valid()) {
    engine_.cancel(timer_);
    timer_ = EventHandle{};
  }
  if (q_.empty()) return;
  const SimTime at = std::max(engine_.now(), q_.begin()->first.first);
  timer_ = engine_.schedule(at, EventKind::kTimer, [this] {
    timer_ = EventHandle{};
    pop_and_dispatch();
    rearm_timer();
  });
}

int vms_priority(double dist_m, SimTime remaining_slack_us, double t1_mps,
                 double t2_mps) {
  if (remaining_slack_us <= 0) return 0;
  const double v = dist_m / to_seconds(remaining_slack_us);
  if (v < t1_mps) return 2;
  if (v < t2_mps) return 1;
  return 0;
}

VmsQueues::VmsQueues(int total_capacity)
    : per_class_(std::max(1, total_capacity / 3)) {}

bool VmsQueues::enqueue(Packet packet, NodeId next_hop, int cls, SimTime now) {
  if (cls < 0 || cls > 2) {
    throw std::invalid_argument("vms class outside {0,1,2}");
  }
  if (static_cast<int>(q_[cls].size()) >= per_class_) return false;
  q_[cls].push_back(Item{std::move(packet), next_hop, cls, now});
  return true;
}

std::optional<VmsQueues::Item> VmsQueues::pop_highest() {
  for (int c = 0; c < 3; ++c) {
    if (!q_[c].empty()) {
      Item item = std::move(q_[c].front());
      q_[c].pop_front();
      return item;
    }
  }
  return std::nullopt;
}

std::size_t VmsQueues::size() const {
  return q_[0].size() + q_[1].size() + q_[2].size();
}

}  // namespace jitsim
