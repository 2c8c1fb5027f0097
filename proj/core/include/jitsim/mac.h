#pragma once

#include <deque>
#include <functional>
#include <optional>

#include "jitsim/engine.h"
#include "jitsim/medium.h"
#include "jitsim/radio.h"

namespace jitsim {

// One node's DCF front end. Holds a FIFO of frames handed down by the
// network layer and contends for one frame at a time: wait for the
// channel to be idle a DIFS, count a random backoff down (frozen while
// busy), transmit, then learn the outcome at the end of the implicit ACK
// exchange. A fresh frame arriving to a channel that has already been
// idle a DIFS transmits without backoff. Collisions double the contention
// window up to cw_max; retry_limit failed attempts drop the frame.
//
// VMS runs place frames with mac_priority set; those start from a wider
// initial window, CW = cw_min * 2^class, so class 0 contends hardest.
class Mac {
 public:
  using CompletionFn = std::function<void(const Frame&, const MacResult&)>;
  using ChannelFn = std::function<void(bool busy)>;

  Mac(Engine& engine, Medium& medium, NodeId self);

  // Queues a frame at the MAC service point. Completion fires once, with
  // the outcome and timing. Frames are served strictly in submit order.
  void submit(Frame frame, CompletionFn done);

  // True when nothing is in service and nothing is queued.
  bool fully_idle() const { return !cur_.has_value() && fifo_.empty(); }
  std::size_t queued() const { return fifo_.size() + (cur_ ? 1 : 0); }

  bool channel_busy() const { return medium_.channel_busy(self_); }
  SimTime channel_idle_since() const { return medium_.idle_since(self_); }
  // Observer for channel busy/idle transitions (idle-detection hook).
  void set_channel_listener(ChannelFn fn) { channel_listener_ = std::move(fn); }

  // Called by the medium on carrier transitions at this node.
  void on_channel_busy();
  void on_channel_idle();

  int initial_cw(int mac_priority) const;

 private:
  struct InService {
    Frame frame;
    CompletionFn done;
    SimTime submitted_at = 0;
    int attempt = 1;
    int cw = 0;
    int backoff_slots = -1;      // -1: not drawn yet
    SimTime countdown_anchor = -1;
    bool transmitting = false;
    EventHandle timer;
  };

  void start_next();
  void begin_contention(bool fresh);
  void resume_countdown();
  void freeze_countdown();
  void transmit_now();
  void on_tx_done(bool delivered);
  void complete(MacOutcome outcome);

  Engine& engine_;
  Medium& medium_;
  const RadioConfig& cfg_;
  NodeId self_;
  std::deque<std::pair<Frame, CompletionFn>> fifo_;
  std::optional<InService> cur_;
  ChannelFn channel_listener_;
};

}  // namespace jitsim
