#include "jitsim/traffic.h"

#include <algorithm>
#include <stdexcept>

namespace jitsim {

namespace {

bool gate_on(SimTime t, const TrafficSpec& spec) {
  return t % spec.burst_period_us < spec.burst_on_us;
}

std::vector<NodeId> pick_sources(const TrafficSpec& spec, const Topology& topo,
                                 Rng& rng) {
  std::vector<NodeId> all;
  for (NodeId n = 0; n < topo.size(); ++n) {
    if (n != topo.sink()) all.push_back(n);
  }
  int want = spec.sources;
  if (spec.pattern == TrafficPattern::kLoadIII) want = 10;
  if (want < 0 || want >= static_cast<int>(all.size())) return all;
  // Seeded draw without replacement, order-stable.
  std::vector<NodeId> picked;
  for (int i = 0; i < want; ++i) {
    const auto idx = static_cast<size_t>(
        rng.uniform(0, static_cast<std::int64_t>(all.size()) - 1));
    picked.push_back(all[idx]);
    all.erase(all.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

void emit_stream(std::vector<Emission>& out, NodeId source, double rate_pps,
                 SimTime generation_end, bool gated, bool two_level,
                 const TrafficSpec& spec, Rng& rng) {
  const auto interval =
      static_cast<SimTime>(static_cast<double>(kUsPerSec) / rate_pps + 0.5);
  const SimTime phase = rng.uniform(0, interval - 1);
  int next_level = 1;
  for (SimTime t = phase; t < generation_end; t += interval) {
    if (gated && !gate_on(t, spec)) continue;
    Emission e;
    e.source = source;
    e.at = t;
    if (two_level) {
      e.level = next_level;
      // Level 1 runs on half the level-2 deadline.
      e.deadline_rel = next_level == 1 ? spec.deadline_us / 2 : spec.deadline_us;
      next_level = 3 - next_level;
    } else {
      e.level = 0;
      e.deadline_rel = spec.deadline_us;
    }
    out.push_back(e);
  }
}

}  // namespace

TrafficSpec load_profile(TrafficPattern which, const TrafficSpec& base) {
  TrafficSpec spec = base;
  spec.pattern = which;
  switch (which) {
    case TrafficPattern::kLoadI:
      spec.sources = -1;
      spec.rate_pps = 1.0;
      break;
    case TrafficPattern::kLoadII:
      spec.sources = -1;
      spec.rate_pps = 0.5;
      break;
    case TrafficPattern::kLoadIII:
      spec.sources = 10;
      spec.rate_pps = 1.0;
      break;
    default:
      throw std::invalid_argument("not a load profile");
  }
  return spec;
}

std::vector<Emission> build_emissions(const TrafficSpec& spec,
                                      const Topology& topo,
                                      SimTime generation_end, Rng& rng) {
  if (spec.rate_pps <= 0.0) {
    throw std::invalid_argument("traffic rate must be positive");
  }
  TrafficSpec eff = spec;
  if (spec.pattern == TrafficPattern::kLoadI ||
      spec.pattern == TrafficPattern::kLoadII ||
      spec.pattern == TrafficPattern::kLoadIII) {
    eff = load_profile(spec.pattern, spec);
  }
  const bool gated = eff.pattern == TrafficPattern::kBursty ||
                     eff.pattern == TrafficPattern::kTwoLevel;
  const bool two_level = eff.pattern == TrafficPattern::kTwoLevel;

  std::vector<Emission> out;
  const std::vector<NodeId> sources = pick_sources(eff, topo, rng);
  for (NodeId s : sources) {
    emit_stream(out, s, eff.rate_pps, generation_end, gated, two_level, eff,
                rng);
  }
  if (eff.pattern == TrafficPattern::kCongestionFlows) {
    // High-rate flows at a few seeded interior nodes, on top of the base.
    double max_d = 0.0;
    for (NodeId n = 0; n < topo.size(); ++n) {
      max_d = std::max(max_d, topo.dist(n, topo.sink()));
    }
    std::vector<NodeId> interior;
    for (NodeId n = 0; n < topo.size(); ++n) {
      if (n == topo.sink()) continue;
      const double d = topo.dist(n, topo.sink());
      if (d > 0.2 * max_d && d < 0.8 * max_d) interior.push_back(n);
    }
    for (int i = 0; i < eff.congestion_flow_count && !interior.empty(); ++i) {
      const auto idx = static_cast<size_t>(
          rng.uniform(0, static_cast<std::int64_t>(interior.size()) - 1));
      const NodeId flow_src = interior[idx];
      interior.erase(interior.begin() + static_cast<std::ptrdiff_t>(idx));
      emit_stream(out, flow_src, eff.congestion_flow_rate_pps, generation_end,
                  false, false, eff, rng);
    }
  }
  std::sort(out.begin(), out.end(), [](const Emission& a, const Emission& b) {
    return a.at != b.at ? a.at < b.at : a.source < b.source;
  });
  return out;
}

}  // namespace jitsim
