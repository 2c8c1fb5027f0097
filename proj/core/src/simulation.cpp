#include "jitsim/simulation.h"

#include <memory>
#include <stdexcept>
#include <vector>

#include "jitsim/engine.h"
#include "jitsim/medium.h"
#include "jitsim/node.h"

namespace jitsim {

void RunConfig::validate() const {
  radio.validate();
  sched.validate();
  if (is_vms(sched.policy) && routing != RoutingMode::kGf) {
    throw std::invalid_argument(
        "vms policies need gf routing (velocity needs geographic distance)");
  }
  if (routing == RoutingMode::kSpeed && sched.policy != Policy::kFifo) {
    throw std::invalid_argument("speed routing runs with the fifo policy");
  }
  if (speed.setpoint_mps <= 0.0) {
    throw std::invalid_argument("speed setpoint must be positive");
  }
  if (traffic.pattern == TrafficPattern::kTwoLevel &&
      traffic.deadline_us % 2 != 0) {
    throw std::invalid_argument(
        "two-level traffic needs an even level-2 deadline (level 1 is half)");
  }
  if (sim_time_us <= 0 || drain_us < 0) {
    throw std::invalid_argument("bad simulation horizon");
  }
  if (data_bytes <= 0) {
    throw std::invalid_argument("data packet size must be positive");
  }
}

RunMetrics run_one(const RunConfig& cfg) {
  cfg.validate();
  const Topology topo = Topology::build(cfg.topo);
  Engine engine(cfg.seed);
  Medium medium(engine, cfg.radio, topo);
  MetricsCollector metrics;

  NodeEnv env{engine,          medium,     topo,      metrics,
              cfg.routing,     cfg.gf_one_hop, cfg.routing_period_us,
              cfg.sched,       cfg.speed,  cfg.data_bytes};

  std::vector<std::unique_ptr<Node>> nodes;
  nodes.reserve(static_cast<size_t>(topo.size()));
  for (NodeId n = 0; n < topo.size(); ++n) {
    nodes.push_back(std::make_unique<Node>(n, env));
  }
  medium.set_delivery_handler([&nodes](NodeId dst, const Frame& f) {
    nodes[static_cast<size_t>(dst)]->on_frame(f);
  });
  for (auto& node : nodes) node->start();

  const std::vector<Emission> emissions =
      build_emissions(cfg.traffic, topo, cfg.sim_time_us, engine.rng());
  for (size_t i = 0; i < emissions.size(); ++i) {
    const Emission& e = emissions[i];
    engine.schedule(e.at, EventKind::kTrafficTick, [&, i] {
      const Emission& em = emissions[i];
      Packet p;
      p.id = static_cast<std::int64_t>(i);
      p.source = em.source;
      p.sink = topo.sink();
      p.created_at = engine.now();
      p.deadline_rel = em.deadline_rel;
      p.deadline_abs = p.created_at + em.deadline_rel;
      p.level = em.level;
      metrics.record_generated(p);
      nodes[static_cast<size_t>(em.source)]->handle_packet(std::move(p));
    });
  }

  engine.run_until(cfg.sim_time_us + cfg.drain_us);
  return metrics.finalize();
}

}  // namespace jitsim
