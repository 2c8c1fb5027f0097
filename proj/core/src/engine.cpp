#include "jitsim/engine.h"

#include <stdexcept>
#include <string>

namespace jitsim {

EventHandle Engine::schedule(SimTime fire_at, EventKind kind, Handler fn) {
  if (fire_at < now_) {
    throw std::logic_error("Engine::schedule: fire_at " +
                           std::to_string(fire_at) + " is before clock " +
                           std::to_string(now_));
  }
  const std::uint64_t seq = next_seq_++;
  queue_.emplace(std::make_pair(fire_at, seq), Entry{kind, std::move(fn)});
  return EventHandle{fire_at, seq};
}

bool Engine::cancel(const EventHandle& h) {
  if (!h.valid()) return false;
  return queue_.erase(std::make_pair(h.fire_at, h.seq)) > 0;
}

RunSummary Engine::run_until(SimTime end) {
  if (end < now_) {
    throw std::logic_error("Engine::run_until: end precedes clock");
  }
  while (!queue_.empty()) {
    auto it = queue_.begin();
    if (it->first.first > end) break;
    now_ = it->first.first;
    Entry entry = std::move(it->second);
    queue_.erase(it);
    ++processed_;
    try {
      entry.fn();
    } catch (const std::exception& e) {
      throw std::runtime_error("event handler failed at t=" +
                               std::to_string(now_) + "us (kind " +
                               std::to_string(static_cast<int>(entry.kind)) +
                               "): " + e.what());
    }
  }
  now_ = end;
  return RunSummary{now_, processed_};
}

}  // namespace jitsim
