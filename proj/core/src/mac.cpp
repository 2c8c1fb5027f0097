#include "jitsim/mac.h"

#include <algorithm>
#include <stdexcept>

namespace jitsim {

Mac::Mac(Engine& engine, Medium& medium, NodeId self)
    : engine_(engine), medium_(medium), cfg_(medium.config()), self_(self) {
  medium_.attach(self, this);
}

int Mac::initial_cw(int mac_priority) const {
  if (mac_priority < 0) return cfg_.cw_min;
  if (mac_priority > 2) {
    throw std::invalid_argument("mac_priority outside {0,1,2}");
  }
  return std::min(cfg_.cw_min << mac_priority, cfg_.cw_max);
}

void Mac::submit(Frame frame, CompletionFn done) {
  if (frame.mac_priority > 2) {
    throw std::invalid_argument("mac_priority outside {0,1,2}");
  }
  fifo_.emplace_back(std::move(frame), std::move(done));
  if (!cur_) start_next();
}

void Mac::start_next() {
  auto [frame, done] = std::move(fifo_.front());
  fifo_.pop_front();
  cur_.emplace();
  cur_->frame = std::move(frame);
  cur_->done = std::move(done);
  cur_->submitted_at = engine_.now();
  cur_->cw = initial_cw(cur_->frame.mac_priority);

  if (!cur_->frame.is_broadcast() &&
      !medium_.in_tx_range(self_, cur_->frame.dst)) {
    complete(MacOutcome::kDroppedNoLink);
    return;
  }
  begin_contention(true);
}

void Mac::begin_contention(bool fresh) {
  const SimTime now = engine_.now();
  if (fresh && !channel_busy() &&
      now - channel_idle_since() >= cfg_.difs_us) {
    // Channel already idle a full DIFS: transmit straight away.
    transmit_now();
    return;
  }
  if (cur_->backoff_slots < 0) {
    cur_->backoff_slots =
        static_cast<int>(engine_.rng().uniform(0, cur_->cw));
  }
  if (!channel_busy()) resume_countdown();
  // else: on_channel_idle resumes us.
}

void Mac::resume_countdown() {
  const SimTime now = engine_.now();
  const SimTime idle_start = channel_idle_since();
  // Slots may only be counted down once the channel has been idle a DIFS.
  cur_->countdown_anchor = std::max(now, idle_start + cfg_.difs_us);
  const SimTime fire_at =
      cur_->countdown_anchor +
      static_cast<SimTime>(cur_->backoff_slots) * cfg_.slot_us;
  cur_->timer = engine_.schedule(fire_at, EventKind::kTimer, [this] {
    cur_->timer = EventHandle{};
    transmit_now();
  });
}

void Mac::freeze_countdown() {
  if (!cur_->timer.valid()) return;
  engine_.cancel(cur_->timer);
  cur_->timer = EventHandle{};
  const SimTime now = engine_.now();
  if (cur_->countdown_anchor >= 0 && now > cur_->countdown_anchor) {
    const int consumed =
        static_cast<int>((now - cur_->countdown_anchor) / cfg_.slot_us);
    cur_->backoff_slots = std::max(0, cur_->backoff_slots - consumed);
  }
  cur_->countdown_anchor = -1;
}

void Mac::on_channel_busy() {
  if (cur_ && !cur_->transmitting) {
    // A station whose backoff expires in the very slot another one starts
    // transmitting is already committed: let the timer fire and collide.
    const bool committed =
        cur_->timer.valid() && cur_->timer.fire_at == engine_.now();
    if (!committed) freeze_countdown();
  }
  if (channel_listener_) channel_listener_(true);
}

void Mac::on_channel_idle() {
  if (cur_ && !cur_->transmitting && !cur_->timer.valid()) {
    resume_countdown();
  }
  if (channel_listener_) channel_listener_(false);
}

void Mac::transmit_now() {
  cur_->transmitting = true;
  const SimTime air = cfg_.airtime_us(cur_->frame.size_bytes);
  const SimTime extra = cur_->frame.is_broadcast() ? 0 : cfg_.ack_time_us();
  medium_.start_tx(self_, cur_->frame, air, extra,
                   [this](bool delivered) { on_tx_done(delivered); });
}

void Mac::on_tx_done(bool delivered) {
  cur_->transmitting = false;
  if (cur_->frame.is_broadcast() || delivered) {
    complete(MacOutcome::kDelivered);
    return;
  }
  if (cur_->attempt >= cfg_.retry_limit) {
    complete(MacOutcome::kDroppedRetries);
    return;
  }
  ++cur_->attempt;
  cur_->cw = std::min(cur_->cw * 2, cfg_.cw_max);
  cur_->backoff_slots = -1;
  begin_contention(false);
}

void Mac::complete(MacOutcome outcome) {
  MacResult res{outcome, cur_->submitted_at, engine_.now()};
  Frame frame = std::move(cur_->frame);
  CompletionFn done = std::move(cur_->done);
  cur_.reset();
  if (done) done(frame, res);
  if (!cur_ && !fifo_.empty()) start_next();
}

}  // namespace jitsim
