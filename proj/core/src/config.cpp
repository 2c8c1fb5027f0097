#include "jitsim/config.h"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace jitsim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (...) {
    throw std::invalid_argument("config: bad number for '" + key + "': " + v);
  }
}

std::int64_t parse_int(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const std::int64_t n = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (...) {
    throw std::invalid_argument("config: bad integer for '" + key + "': " + v);
  }
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "on") return true;
  if (v == "false" || v == "0" || v == "off") return false;
  throw std::invalid_argument("config: bad boolean for '" + key + "': " + v);
}

// Shortest decimal that parses back to the same double.
std::string format_double(double d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", d);
  if (std::stod(buf) != d) {
    std::snprintf(buf, sizeof buf, "%.17g", d);
  }
  return buf;
}

template <typename T>
std::string join(const std::vector<T>& v,
                 const std::function<std::string(const T&)>& fmt) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt(v[i]);
  }
  return out;
}

TopologyKind topology_from_string(const std::string& s) {
  if (s == "grid") return TopologyKind::kGrid;
  if (s == "random") return TopologyKind::kRandom;
  throw std::invalid_argument("config: unknown topology '" + s + "'");
}

SinkPlacement sink_from_string(const std::string& s) {
  if (s == "nw_corner") return SinkPlacement::kNwCorner;
  if (s == "center") return SinkPlacement::kCenter;
  throw std::invalid_argument("config: unknown sink_placement '" + s + "'");
}

TrafficPattern traffic_from_string(const std::string& s) {
  if (s == "constant") return TrafficPattern::kConstant;
  if (s == "bursty") return TrafficPattern::kBursty;
  if (s == "two_level") return TrafficPattern::kTwoLevel;
  if (s == "load_i") return TrafficPattern::kLoadI;
  if (s == "load_ii") return TrafficPattern::kLoadII;
  if (s == "load_iii") return TrafficPattern::kLoadIII;
  if (s == "congestion_flows") return TrafficPattern::kCongestionFlows;
  throw std::invalid_argument("config: unknown traffic '" + s + "'");
}

std::string to_string(TopologyKind k) {
  return k == TopologyKind::kGrid ? "grid" : "random";
}
std::string to_string(SinkPlacement p) {
  return p == SinkPlacement::kNwCorner ? "nw_corner" : "center";
}
std::string to_string(TrafficPattern t) {
  switch (t) {
    case TrafficPattern::kConstant: return "constant";
    case TrafficPattern::kBursty: return "bursty";
    case TrafficPattern::kTwoLevel: return "two_level";
    case TrafficPattern::kLoadI: return "load_i";
    case TrafficPattern::kLoadII: return "load_ii";
    case TrafficPattern::kLoadIII: return "load_iii";
    case TrafficPattern::kCongestionFlows: return "congestion_flows";
  }
  return "?";
}
std::string to_string(GfOneHop g) {
  return g == GfOneHop::kProgress ? "progress" : "range";
}

}  // namespace

std::string to_string(Policy p) {
  switch (p) {
    case Policy::kFifo: return "fifo";
    case Policy::kJitsS: return "jits_s";
    case Policy::kJitsD: return "jits_d";
    case Policy::kJitsNl: return "jits_nl";
    case Policy::kVmsS: return "vms_s";
    case Policy::kVmsD: return "vms_d";
  }
  return "?";
}

std::string to_string(RoutingMode r) {
  switch (r) {
    case RoutingMode::kSp: return "sp";
    case RoutingMode::kGf: return "gf";
    case RoutingMode::kSpeed: return "speed";
  }
  return "?";
}

std::string to_string(SpeedVariant v) {
  switch (v) {
    case SpeedVariant::kSpeed: return "speed";
    case SpeedVariant::kSpeedT: return "speed_t";
    case SpeedVariant::kSpeedS: return "speed_s";
  }
  return "?";
}

Policy policy_from_string(const std::string& s) {
  if (s == "fifo") return Policy::kFifo;
  if (s == "jits_s") return Policy::kJitsS;
  if (s == "jits_d") return Policy::kJitsD;
  if (s == "jits_nl") return Policy::kJitsNl;
  if (s == "vms_s") return Policy::kVmsS;
  if (s == "vms_d") return Policy::kVmsD;
  throw std::invalid_argument("config: unknown policy '" + s + "'");
}

RoutingMode routing_from_string(const std::string& s) {
  if (s == "sp") return RoutingMode::kSp;
  if (s == "gf") return RoutingMode::kGf;
  if (s == "speed") return RoutingMode::kSpeed;
  throw std::invalid_argument("config: unknown routing '" + s + "'");
}

SpeedVariant speed_variant_from_string(const std::string& s) {
  if (s == "speed") return SpeedVariant::kSpeed;
  if (s == "speed_t") return SpeedVariant::kSpeedT;
  if (s == "speed_s") return SpeedVariant::kSpeedS;
  throw std::invalid_argument("config: unknown speed_variant '" + s + "'");
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  bool sink_given = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));

    if (key == "scenario") {
      cfg.scenario = val;
    } else if (key == "policy") {
      cfg.policies.clear();
      for (const auto& p : split_list(val)) cfg.policies.push_back(policy_from_string(p));
    } else if (key == "routing") {
      cfg.routings.clear();
      for (const auto& r : split_list(val)) cfg.routings.push_back(routing_from_string(r));
    } else if (key == "deadline_s") {
      cfg.deadlines_s.clear();
      for (const auto& d : split_list(val)) cfg.deadlines_s.push_back(parse_double(d, key));
    } else if (key == "deadline_sweep") {
      const auto parts = split_list(val);
      if (parts.size() != 3) {
        throw std::invalid_argument("config: deadline_sweep wants start,stop,step");
      }
      const double start = parse_double(parts[0], key);
      const double stop = parse_double(parts[1], key);
      const double step = parse_double(parts[2], key);
      if (step <= 0.0 || stop < start) {
        throw std::invalid_argument("config: bad deadline_sweep range");
      }
      cfg.deadlines_s.clear();
      // Walk in integer microseconds so 0.1-steps hit exact points.
      const SimTime start_us = from_seconds(start), stop_us = from_seconds(stop),
                    step_us = from_seconds(step);
      for (SimTime d = start_us; d <= stop_us; d += step_us) {
        cfg.deadlines_s.push_back(to_seconds(d));
      }
    } else if (key == "seeds") {
      cfg.seeds.clear();
      for (const auto& s : split_list(val)) {
        cfg.seeds.push_back(static_cast<std::uint64_t>(parse_int(s, key)));
      }
      if (cfg.seeds.empty()) cfg.seeds.push_back(1);
    } else if (key == "topology") {
      cfg.topology = topology_from_string(val);
      if (!sink_given) {
        cfg.sink_placement = cfg.topology == TopologyKind::kGrid
                                 ? SinkPlacement::kNwCorner
                                 : SinkPlacement::kCenter;
      }
    } else if (key == "sink_placement") {
      cfg.sink_placement = sink_from_string(val);
      sink_given = true;
    } else if (key == "node_count") {
      cfg.node_count = static_cast<int>(parse_int(val, key));
    } else if (key == "area_side_m") {
      cfg.area_side_m = parse_double(val, key);
    } else if (key == "topo_seed") {
      cfg.topo_seed = static_cast<std::uint64_t>(parse_int(val, key));
    } else if (key == "traffic") {
      cfg.traffic = traffic_from_string(val);
    } else if (key == "rate_pps") {
      cfg.rate_pps = parse_double(val, key);
    } else if (key == "sources") {
      cfg.sources = val == "all" ? -1 : static_cast<int>(parse_int(val, key));
    } else if (key == "burst_period_s") {
      cfg.burst_period_s = parse_double(val, key);
    } else if (key == "burst_on_s") {
      cfg.burst_on_s = parse_double(val, key);
    } else if (key == "congestion_flow_count") {
      cfg.congestion_flow_count = static_cast<int>(parse_int(val, key));
    } else if (key == "congestion_flow_rate_pps") {
      cfg.congestion_flow_rate_pps = parse_double(val, key);
    } else if (key == "sim_time_s") {
      cfg.sim_time_s = parse_double(val, key);
    } else if (key == "drain_s") {
      cfg.drain_s = parse_double(val, key);
    } else if (key == "alpha") {
      cfg.alpha = parse_double(val, key);
    } else if (key == "queue_capacity") {
      cfg.queue_capacity = static_cast<int>(parse_int(val, key));
    } else if (key == "idle_detection") {
      cfg.idle_detection = parse_bool(val, key);
    } else if (key == "vms_t1_mps") {
      cfg.vms_t1_mps = parse_double(val, key);
    } else if (key == "vms_t2_mps") {
      cfg.vms_t2_mps = parse_double(val, key);
    } else if (key == "speed_setpoint_mps") {
      cfg.speed_setpoint_mps = parse_double(val, key);
    } else if (key == "speed_variant") {
      cfg.speed_variant = speed_variant_from_string(val);
    } else if (key == "beacon_period_s") {
      cfg.beacon_period_s = parse_double(val, key);
    } else if (key == "routing_period_s") {
      cfg.routing_period_s = parse_double(val, key);
    } else if (key == "gf_one_hop") {
      if (val == "progress") cfg.gf_one_hop = GfOneHop::kProgress;
      else if (val == "range") cfg.gf_one_hop = GfOneHop::kRange;
      else throw std::invalid_argument("config: unknown gf_one_hop '" + val + "'");
    } else if (key == "data_bytes") {
      cfg.data_bytes = static_cast<int>(parse_int(val, key));
    } else if (key == "tx_range_m") {
      cfg.radio.tx_range_m = parse_double(val, key);
    } else if (key == "interference_range_m") {
      cfg.radio.interference_range_m = parse_double(val, key);
    } else if (key == "bandwidth_bps") {
      cfg.radio.bandwidth_bps = parse_int(val, key);
    } else if (key == "slot_us") {
      cfg.radio.slot_us = parse_int(val, key);
    } else if (key == "difs_us") {
      cfg.radio.difs_us = parse_int(val, key);
    } else if (key == "sifs_us") {
      cfg.radio.sifs_us = parse_int(val, key);
    } else if (key == "cw_min") {
      cfg.radio.cw_min = static_cast<int>(parse_int(val, key));
    } else if (key == "cw_max") {
      cfg.radio.cw_max = static_cast<int>(parse_int(val, key));
    } else if (key == "retry_limit") {
      cfg.radio.retry_limit = static_cast<int>(parse_int(val, key));
    } else if (key == "phy_overhead_us") {
      cfg.radio.phy_overhead_us = parse_int(val, key);
    } else if (key == "mac_header_bytes") {
      cfg.radio.mac_header_bytes = static_cast<int>(parse_int(val, key));
    } else if (key == "ack_bytes") {
      cfg.radio.ack_bytes = static_cast<int>(parse_int(val, key));
    } else if (key == "etd_beta") {
      cfg.radio.etd_beta = parse_double(val, key);
    } else {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "scenario = " << cfg.scenario << "\n";
  out << "policy = "
      << join<Policy>(cfg.policies, [](const Policy& p) { return to_string(p); })
      << "\n";
  out << "routing = "
      << join<RoutingMode>(cfg.routings,
                           [](const RoutingMode& r) { return to_string(r); })
      << "\n";
  out << "deadline_s = "
      << join<double>(cfg.deadlines_s,
                      [](const double& d) { return format_double(d); })
      << "\n";
  out << "seeds = "
      << join<std::uint64_t>(
             cfg.seeds,
             [](const std::uint64_t& s) { return std::to_string(s); })
      << "\n";
  out << "topology = " << to_string(cfg.topology) << "\n";
  out << "sink_placement = " << to_string(cfg.sink_placement) << "\n";
  out << "node_count = " << cfg.node_count << "\n";
  out << "area_side_m = " << format_double(cfg.area_side_m) << "\n";
  out << "topo_seed = " << cfg.topo_seed << "\n";
  out << "traffic = " << to_string(cfg.traffic) << "\n";
  out << "rate_pps = " << format_double(cfg.rate_pps) << "\n";
  out << "sources = "
      << (cfg.sources < 0 ? std::string("all") : std::to_string(cfg.sources))
      << "\n";
  out << "burst_period_s = " << format_double(cfg.burst_period_s) << "\n";
  out << "burst_on_s = " << format_double(cfg.burst_on_s) << "\n";
  out << "congestion_flow_count = " << cfg.congestion_flow_count << "\n";
  out << "congestion_flow_rate_pps = " << format_double(cfg.congestion_flow_rate_pps) << "\n";
  out << "sim_time_s = " << format_double(cfg.sim_time_s) << "\n";
  out << "drain_s = " << format_double(cfg.drain_s) << "\n";
  out << "alpha = " << format_double(cfg.alpha) << "\n";
  out << "queue_capacity = " << cfg.queue_capacity << "\n";
  out << "idle_detection = " << (cfg.idle_detection ? "true" : "false") << "\n";
  out << "vms_t1_mps = " << format_double(cfg.vms_t1_mps) << "\n";
  out << "vms_t2_mps = " << format_double(cfg.vms_t2_mps) << "\n";
  out << "speed_setpoint_mps = " << format_double(cfg.speed_setpoint_mps) << "\n";
  out << "speed_variant = " << to_string(cfg.speed_variant) << "\n";
  out << "beacon_period_s = " << format_double(cfg.beacon_period_s) << "\n";
  out << "routing_period_s = " << format_double(cfg.routing_period_s) << "\n";
  out << "gf_one_hop = " << to_string(cfg.gf_one_hop) << "\n";
  out << "data_bytes = " << cfg.data_bytes << "\n";
  out << "tx_range_m = " << format_double(cfg.radio.tx_range_m) << "\n";
  out << "interference_range_m = " << format_double(cfg.radio.interference_range_m) << "\n";
  out << "bandwidth_bps = " << cfg.radio.bandwidth_bps << "\n";
  out << "slot_us = " << cfg.radio.slot_us << "\n";
  out << "difs_us = " << cfg.radio.difs_us << "\n";
  out << "sifs_us = " << cfg.radio.sifs_us << "\n";
  out << "cw_min = " << cfg.radio.cw_min << "\n";
  out << "cw_max = " << cfg.radio.cw_max << "\n";
  out << "retry_limit = " << cfg.radio.retry_limit << "\n";
  out << "phy_overhead_us = " << cfg.radio.phy_overhead_us << "\n";
  out << "mac_header_bytes = " << cfg.radio.mac_header_bytes << "\n";
  out << "ack_bytes = " << cfg.radio.ack_bytes << "\n";
  out << "etd_beta = " << format_double(cfg.radio.etd_beta) << "\n";
  return out.str();
}

std::vector<ExpandedRun> expand(const ExperimentConfig& cfg) {
  std::string scenario = cfg.scenario;
  if (scenario.empty()) {
    scenario = to_string(cfg.topology) + "_" + to_string(cfg.traffic);
  }
  std::vector<ExpandedRun> runs;
  for (const Policy policy : cfg.policies) {
    for (const RoutingMode routing : cfg.routings) {
      for (const double deadline : cfg.deadlines_s) {
        for (const std::uint64_t seed : cfg.seeds) {
          ExpandedRun r;
          r.scenario = scenario;
          r.policy = policy;
          r.routing = routing;
          r.speed_variant = cfg.speed_variant;
          r.deadline_s = deadline;
          r.seed = seed;

          RunConfig& rc = r.run;
          rc.radio = cfg.radio;
          rc.sched.policy = policy;
          rc.sched.alpha = cfg.alpha;
          rc.sched.queue_capacity = cfg.queue_capacity;
          rc.sched.idle_detection = cfg.idle_detection;
          rc.sched.vms_t1_mps = cfg.vms_t1_mps;
          rc.sched.vms_t2_mps = cfg.vms_t2_mps;
          rc.speed.setpoint_mps = cfg.speed_setpoint_mps;
          rc.speed.beacon_period_s = cfg.beacon_period_s;
          rc.speed.variant = cfg.speed_variant;
          rc.routing = routing;
          rc.gf_one_hop = cfg.gf_one_hop;
          rc.routing_period_us = from_seconds(cfg.routing_period_s);
          rc.topo.kind = cfg.topology;
          rc.topo.node_count = cfg.node_count;
          rc.topo.area_side_m = cfg.area_side_m;
          rc.topo.sink = cfg.sink_placement;
          rc.topo.seed = cfg.topo_seed;
          rc.traffic.pattern = cfg.traffic;
          rc.traffic.rate_pps = cfg.rate_pps;
          rc.traffic.sources = cfg.sources;
          rc.traffic.deadline_us = from_seconds(deadline);
          rc.traffic.burst_period_us = from_seconds(cfg.burst_period_s);
          rc.traffic.burst_on_us = from_seconds(cfg.burst_on_s);
          rc.traffic.congestion_flow_count = cfg.congestion_flow_count;
          rc.traffic.congestion_flow_rate_pps = cfg.congestion_flow_rate_pps;
          rc.sim_time_us = from_seconds(cfg.sim_time_s);
          rc.drain_us = from_seconds(cfg.drain_s);
          rc.seed = seed;
          rc.data_bytes = cfg.data_bytes;

          rc.validate();
          runs.push_back(std::move(r));
        }
      }
    }
  }
  return runs;
}

}  // namespace jitsim
