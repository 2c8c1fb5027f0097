#include "jitsim/metrics.h"

#include <stdexcept>

namespace jitsim {

std::int64_t LevelMetrics::dropped_total() const {
  std::int64_t sum = 0;
  for (auto d : dropped) sum += d;
  return sum;
}

double LevelMetrics::miss_ratio() const {
  if (generated == 0) return 0.0;
  return static_cast<double>(generated - on_time) /
         static_cast<double>(generated);
}

double LevelMetrics::drop_ratio() const {
  if (generated == 0) return 0.0;
  return static_cast<double>(dropped_total()) / static_cast<double>(generated);
}

double LevelMetrics::avg_delay_ms() const {
  const std::int64_t n = delivered();
  if (n == 0) return 0.0;
  return to_ms(delay_sum_us) / static_cast<double>(n);
}

double LevelMetrics::avg_hops() const {
  const std::int64_t n = delivered();
  if (n == 0) return 0.0;
  return static_cast<double>(hops_sum) / static_cast<double>(n);
}

LevelMetrics& MetricsCollector::level_bucket(int level) {
  if (level != 0) two_level_seen_ = true;
  return m_.by_level[level];
}

void MetricsCollector::record_generated(const Packet& p) {
  const auto id = static_cast<size_t>(p.id);
  if (fates_.size() <= id) {
    fates_.resize(id + 1, Fate::kPending);
    pending_.resize(id + 1);
  }
  pending_[id] = p;
  ++unresolved_;
  ++m_.total.generated;
  ++level_bucket(p.level).generated;
}

void MetricsCollector::record_delivery(const Packet& p, SimTime at) {
  const auto id = static_cast<size_t>(p.id);
  if (id >= fates_.size()) {
    throw std::logic_error("delivery of a packet never generated");
  }
  if (fates_[id] != Fate::kPending) {
    ++m_.duplicate_deliveries;  // tolerated, counted, ignored
    return;
  }
  const SimTime delay = at - p.created_at;
  const bool on_time = at <= p.deadline_abs;  // boundary arrival is on time
  fates_[id] = on_time ? Fate::kOnTime : Fate::kLate;
  --unresolved_;
  for (LevelMetrics* lm : {&m_.total, &level_bucket(p.level)}) {
    if (on_time) {
      ++lm->on_time;
    } else {
      ++lm->late;
    }
    lm->delay_sum_us += delay;
    if (delay > lm->max_delay_us) lm->max_delay_us = delay;
    lm->hops_sum += p.hops_traveled;
  }
}

void MetricsCollector::record_drop(const Packet& p, DropCause cause) {
  const auto id = static_cast<size_t>(p.id);
  if (id >= fates_.size()) {
    throw std::logic_error("drop of a packet never generated");
  }
  if (fates_[id] == Fate::kDropped) {
    throw std::logic_error("packet dropped twice");
  }
  if (fates_[id] != Fate::kPending) {
    throw std::logic_error("dropping an already delivered packet");
  }
  fates_[id] = Fate::kDropped;
  --unresolved_;
  ++m_.total.dropped[static_cast<size_t>(cause)];
  ++level_bucket(p.level).dropped[static_cast<size_t>(cause)];
}

void MetricsCollector::record_queue_delay(SimTime d) {
  m_.queue_delay_sum_us += d;
  ++m_.queue_dispatches;
}

RunMetrics MetricsCollector::finalize() {
  // Whatever is still in flight counts as dropped at drain end.
  for (size_t id = 0; id < fates_.size(); ++id) {
    if (fates_[id] == Fate::kPending) {
      record_drop(pending_[id], DropCause::kDrainEnd);
    }
  }
  if (!two_level_seen_) {
    // Single-class runs report everything as level 0.
    m_.by_level.clear();
    m_.by_level[0] = m_.total;
  }
  // Conservation and the definitional drop <= miss bound hold for every
  // run; a violation is a bug, not a result.
  auto check = [](const LevelMetrics& lm) {
    if (lm.on_time + lm.late + lm.dropped_total() != lm.generated) {
      throw std::logic_error("packet fate conservation violated");
    }
    if (lm.drop_ratio() > lm.miss_ratio() + 1e-12) {
      throw std::logic_error("drop ratio exceeds miss ratio");
    }
  };
  check(m_.total);
  for (const auto& [lvl, lm] : m_.by_level) {
    (void)lvl;
    check(lm);
  }
  return m_;
}

}  // namespace jitsim
