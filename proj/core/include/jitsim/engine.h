#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>

#include "jitsim/rng.h"
#include "jitsim/sim_time.h"

namespace jitsim {

enum class EventKind : std::uint8_t {
  kTimer,
  kFrameArrival,
  kBeacon,
  kTrafficTick,
  kFloodTick,
};

// Returned by Engine::schedule; identifies one queue entry. Valid for
// cancellation until the event fires.
struct EventHandle {
  SimTime fire_at = -1;
  std::uint64_t seq = 0;
  bool valid() const { return fire_at >= 0; }
};

struct RunSummary {
  SimTime end_time = 0;
  std::uint64_t events_processed = 0;
  bool operator==(const RunSummary&) const = default;
};

// Single-threaded discrete-event engine. Events fire in (fire_at, seq)
// order; seq is assigned at scheduling time, so simultaneous events run
// FIFO. One engine (and its one RNG stream) backs exactly one run.
class Engine {
 public:
  using Handler = std::function<void()>;

  explicit Engine(std::uint64_t seed) : rng_(seed) {}

  SimTime now() const { return now_; }
  Rng& rng() { return rng_; }

  // Scheduling in the past is a programming error and throws.
  EventHandle schedule(SimTime fire_at, EventKind kind, Handler fn);
  EventHandle schedule_in(SimTime delay, EventKind kind, Handler fn) {
    return schedule(now_ + delay, kind, std::move(fn));
  }

  // True iff the event had not yet fired and is now removed. Idempotent.
  bool cancel(const EventHandle& h);

  // Processes every event with fire_at <= end, then sets the clock to end.
  RunSummary run_until(SimTime end);

  std::size_t pending() const { return queue_.size(); }

 private:
  struct Entry {
    EventKind kind;
    Handler fn;
  };

  SimTime now_ = 0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t processed_ = 0;
  std::map<std::pair<SimTime, std::uint64_t>, Entry> queue_;
  Rng rng_;
};

}  // namespace jitsim
