#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jitsim/simulation.h"

namespace jitsim {

// A full experiment: the cross product of policy x routing x deadline x
// seed over one scenario. Parsed from a flat key=value file; every key
// has a documented default and unknown keys are rejected.
struct ExperimentConfig {
  std::string scenario;  // CSV label; empty derives "<topology>_<traffic>"

  // Sweep axes.
  std::vector<Policy> policies{Policy::kJitsD};
  std::vector<RoutingMode> routings{RoutingMode::kSp};
  std::vector<double> deadlines_s{1.0};
  std::vector<std::uint64_t> seeds{1, 2, 3};

  // Scenario scalars (defaults mirror the simulation parameter table).
  TopologyKind topology = TopologyKind::kGrid;
  SinkPlacement sink_placement = SinkPlacement::kNwCorner;
  int node_count = 100;
  double area_side_m = 1000.0;
  std::uint64_t topo_seed = 1;
  TrafficPattern traffic = TrafficPattern::kConstant;
  double rate_pps = 2.0;
  int sources = -1;  // -1 = all non-sink nodes
  double burst_period_s = 10.0;
  double burst_on_s = 5.0;
  int congestion_flow_count = 2;
  double congestion_flow_rate_pps = 10.0;
  double sim_time_s = 120.0;
  double drain_s = 10.0;

  // Scheduler.
  double alpha = 0.7;
  int queue_capacity = 64;
  bool idle_detection = false;
  double vms_t1_mps = 500.0;
  double vms_t2_mps = 1500.0;

  // SPEED.
  double speed_setpoint_mps = 1000.0;
  SpeedVariant speed_variant = SpeedVariant::kSpeed;
  double beacon_period_s = 1.0;

  // Routing.
  double routing_period_s = 5.0;
  GfOneHop gf_one_hop = GfOneHop::kProgress;

  // Radio.
  RadioConfig radio;
  int data_bytes = 32;

  bool operator==(const ExperimentConfig&) const = default;
};

// One expanded run of the sweep matrix.
struct ExpandedRun {
  std::string scenario;
  Policy policy;
  RoutingMode routing;
  SpeedVariant speed_variant;
  double deadline_s;
  std::uint64_t seed;
  RunConfig run;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

// Validates every combination up front (bad configs fail before any run).
std::vector<ExpandedRun> expand(const ExperimentConfig& cfg);

// Name mapping shared by the config file, the CSV and the CLI.
std::string to_string(Policy p);
std::string to_string(RoutingMode r);
std::string to_string(SpeedVariant v);
Policy policy_from_string(const std::string& s);
RoutingMode routing_from_string(const std::string& s);
SpeedVariant speed_variant_from_string(const std::string& s);

}  // namespace jitsim
