#include "jitsim/experiment.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "jitsim/simulation.h"

namespace jitsim {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

auto row_key(const ResultRow& r) {
  return std::make_tuple(r.scenario, to_string(r.policy), to_string(r.routing),
                         r.deadline_s, r.level, r.seed);
}

// The series a row belongs to when plotted. SPEED stacks show up under
// the variant name rather than "fifo".
std::string series_token(const AggregateRow& r, bool many_scenarios,
                         bool many_routings) {
  std::string t;
  if (many_scenarios) t += r.scenario + "-";
  if (r.routing == RoutingMode::kSpeed) {
    t += to_string(r.speed_variant);
  } else {
    t += to_string(r.policy);
    if (many_routings) t += "-" + to_string(r.routing);
  }
  if (r.level != 0) t += "-l" + std::to_string(r.level);
  return t;
}

}  // namespace

std::vector<ResultRow> run_all(const std::vector<ExpandedRun>& runs,
                               int threads) {
  std::vector<std::vector<ResultRow>> per_run(runs.size());
  std::vector<std::string> errors(runs.size());
  std::atomic<size_t> next{0};

  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= runs.size()) return;
      const ExpandedRun& er = runs[i];
      try {
        const RunMetrics rm = run_one(er.run);
        for (const auto& [level, lm] : rm.by_level) {
          ResultRow row{er.scenario,   er.policy, er.routing,
                        er.speed_variant, er.deadline_s, level,
                        er.seed,       lm};
          per_run[i].push_back(std::move(row));
        }
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };

  const int n = std::max(1, std::min<int>(threads, static_cast<int>(runs.size())));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  for (size_t i = 0; i < runs.size(); ++i) {
    if (!errors[i].empty()) {
      throw std::runtime_error("run " + std::to_string(i) + " (" +
                               runs[i].scenario + ", " +
                               to_string(runs[i].policy) + ", seed " +
                               std::to_string(runs[i].seed) +
                               ") aborted: " + errors[i]);
    }
  }

  std::vector<ResultRow> rows;
  for (auto& chunk : per_run) {
    for (auto& r : chunk) rows.push_back(std::move(r));
  }
  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return row_key(a) < row_key(b);
  });
  return rows;
}

std::string raw_csv_header() {
  return "scenario,policy,routing,deadline_s,level,seed,generated,on_time,"
         "late,dropped_mac,dropped_routing,dropped_speed,dropped_drain,"
         "miss_ratio,drop_ratio,avg_delay_ms,max_delay_ms,avg_hops";
}

std::string to_csv(const ResultRow& r) {
  const auto& m = r.m;
  const auto d = [&](DropCause c) {
    return m.dropped[static_cast<size_t>(c)];
  };
  const std::int64_t dropped_mac = d(DropCause::kMac);
  const std::int64_t dropped_routing =
      d(DropCause::kGfVoid) + d(DropCause::kNoRoute) + d(DropCause::kQueueOverflow);
  const std::int64_t dropped_speed =
      d(DropCause::kSpeedVoid) + d(DropCause::kSpeedSetpoint);
  const std::int64_t dropped_drain = d(DropCause::kDrainEnd);

  std::string out;
  out += r.scenario + ",";
  out += to_string(r.policy) + ",";
  out += to_string(r.routing) + ",";
  out += fmt("%.3f", r.deadline_s) + ",";
  out += std::to_string(r.level) + ",";
  out += std::to_string(r.seed) + ",";
  out += std::to_string(m.generated) + ",";
  out += std::to_string(m.on_time) + ",";
  out += std::to_string(m.late) + ",";
  out += std::to_string(dropped_mac) + ",";
  out += std::to_string(dropped_routing) + ",";
  out += std::to_string(dropped_speed) + ",";
  out += std::to_string(dropped_drain) + ",";
  out += fmt("%.6f", m.miss_ratio()) + ",";
  out += fmt("%.6f", m.drop_ratio()) + ",";
  out += fmt("%.3f", m.avg_delay_ms()) + ",";
  out += fmt("%.3f", to_ms(m.max_delay_us)) + ",";
  out += fmt("%.3f", m.avg_hops());
  return out;
}

std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows) {
  std::map<std::tuple<std::string, std::string, std::string, double, int>,
           AggregateRow>
      groups;
  for (const auto& r : rows) {
    auto key = std::make_tuple(r.scenario, to_string(r.policy),
                               to_string(r.routing), r.deadline_s, r.level);
    auto& g = groups[key];
    if (g.runs == 0) {
      g.scenario = r.scenario;
      g.policy = r.policy;
      g.routing = r.routing;
      g.speed_variant = r.speed_variant;
      g.deadline_s = r.deadline_s;
      g.level = r.level;
    }
    ++g.runs;
    g.miss_ratio += r.m.miss_ratio();
    g.drop_ratio += r.m.drop_ratio();
    g.avg_delay_ms += r.m.avg_delay_ms();
    g.max_delay_ms += to_ms(r.m.max_delay_us);
    g.avg_hops += r.m.avg_hops();
  }
  std::vector<AggregateRow> out;
  out.reserve(groups.size());
  for (auto& [key, g] : groups) {
    (void)key;
    g.miss_ratio /= g.runs;
    g.drop_ratio /= g.runs;
    g.avg_delay_ms /= g.runs;
    g.max_delay_ms /= g.runs;
    g.avg_hops /= g.runs;
    out.push_back(g);
  }
  return out;
}

void write_raw_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << raw_csv_header() << "\n";
  for (const auto& r : rows) out << to_csv(r) << "\n";
}

void write_aggregate_csv(const std::string& path,
                         const std::vector<AggregateRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "scenario,policy,routing,deadline_s,level,runs,miss_ratio,drop_ratio,"
         "avg_delay_ms,max_delay_ms,avg_hops\n";
  for (const auto& r : rows) {
    out << r.scenario << "," << to_string(r.policy) << ","
        << to_string(r.routing) << "," << fmt("%.3f", r.deadline_s) << ","
        << r.level << "," << r.runs << "," << fmt("%.6f", r.miss_ratio) << ","
        << fmt("%.6f", r.drop_ratio) << "," << fmt("%.3f", r.avg_delay_ms)
        << "," << fmt("%.3f", r.max_delay_ms) << ","
        << fmt("%.3f", r.avg_hops) << "\n";
  }
}

void emit_plot_data(const std::string& dir, const std::string& family,
                    const std::vector<AggregateRow>& rows) {
  if (rows.empty()) {
    throw std::runtime_error("emit_plot_data: no aggregate rows");
  }
  std::filesystem::create_directories(dir);
  std::set<std::string> scenarios, routings;
  for (const auto& r : rows) {
    scenarios.insert(r.scenario);
    routings.insert(to_string(r.routing));
  }
  const bool many_scenarios = scenarios.size() > 1;
  const bool many_routings = routings.size() > 1;

  struct Series {
    std::vector<std::pair<double, double>> points;
  };
  const std::pair<const char*, double AggregateRow::*> metrics[] = {
      {"miss_ratio", &AggregateRow::miss_ratio},
      {"drop_ratio", &AggregateRow::drop_ratio},
      {"avg_delay_ms", &AggregateRow::avg_delay_ms},
      {"avg_hops", &AggregateRow::avg_hops},
  };
  for (const auto& [metric_name, member] : metrics) {
    std::map<std::string, Series> series;
    for (const auto& r : rows) {
      series[series_token(r, many_scenarios, many_routings)].points.emplace_back(
          r.deadline_s, r.*member);
    }
    for (auto& [token, s] : series) {
      std::sort(s.points.begin(), s.points.end());
      const std::string path =
          dir + "/" + family + "_" + token + "_" + metric_name + ".dat";
      std::ofstream out(path);
      if (!out) throw std::runtime_error("cannot write " + path);
      for (const auto& [x, y] : s.points) {
        out << fmt("%.3f", x) << " " << fmt("%.6f", y) << "\n";
      }
    }
  }
}

int runner_threads() {
  if (const char* env = std::getenv("JITS_SIM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

std::vector<std::string> list_families() {
  return {"jits_vs_vms", "sp_vs_gf",  "bursty",       "random_deploy",
          "two_level",   "speed_routing", "jits_vs_speed"};
}

std::vector<ExperimentConfig> replicate_family(const std::string& family) {
  ExperimentConfig base;  // defaults mirror the simulation parameter table

  if (family == "jits_vs_vms") {
    // Schedulers head to head on the routing protocol VMS is built on.
    base.scenario = "jits_vs_vms";
    base.policies = {Policy::kJitsS, Policy::kJitsD, Policy::kVmsS, Policy::kVmsD};
    base.routings = {RoutingMode::kGf};
    base.deadlines_s = {0.5, 1.0, 1.5, 2.0};
    return {base};
  }
  if (family == "sp_vs_gf") {
    base.scenario = "sp_vs_gf";
    base.policies = {Policy::kJitsS, Policy::kJitsD, Policy::kJitsNl};
    base.routings = {RoutingMode::kSp, RoutingMode::kGf};
    base.deadlines_s = {0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    return {base};
  }
  if (family == "bursty") {
    base.scenario = "bursty";
    base.traffic = TrafficPattern::kBursty;
    base.policies = {Policy::kJitsS, Policy::kJitsD, Policy::kVmsS};
    base.routings = {RoutingMode::kGf};
    base.deadlines_s = {0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    return {base};
  }
  if (family == "random_deploy") {
    base.scenario = "random_deploy";
    base.topology = TopologyKind::kRandom;
    base.sink_placement = SinkPlacement::kCenter;
    base.policies = {Policy::kJitsS, Policy::kJitsD, Policy::kVmsS};
    base.routings = {RoutingMode::kGf};
    base.deadlines_s.clear();
    for (int i = 5; i <= 20; ++i) base.deadlines_s.push_back(i * 0.1);
    return {base};
  }
  if (family == "two_level") {
    base.scenario = "two_level";
    base.traffic = TrafficPattern::kTwoLevel;
    base.policies = {Policy::kJitsD, Policy::kJitsNl, Policy::kVmsS};
    base.routings = {RoutingMode::kGf};
    base.deadlines_s = {1.0, 1.5, 2.0, 2.5, 3.0};  // level-2; level-1 is half
    return {base};
  }
  if (family == "speed_routing") {
    // Plain forwarding under cross traffic: SP vs GF vs SPEED.
    base.scenario = "speed_routing";
    base.traffic = TrafficPattern::kCongestionFlows;
    base.rate_pps = 0.5;
    base.policies = {Policy::kFifo};
    base.routings = {RoutingMode::kSp, RoutingMode::kGf, RoutingMode::kSpeed};
    base.deadlines_s = {0.2, 0.4, 0.6, 0.8, 1.0};
    return {base};
  }
  if (family == "jits_vs_speed") {
    // Two stacks per load level; SPEED's setpoint follows its hand-tuned
    // convention of matching the congested regime.
    std::vector<ExperimentConfig> out;
    const std::pair<const char*, TrafficPattern> loads[] = {
        {"load_i", TrafficPattern::kLoadI},
        {"load_ii", TrafficPattern::kLoadII},
        {"load_iii", TrafficPattern::kLoadIII},
    };
    for (const auto& [name, pattern] : loads) {
      ExperimentConfig jits = base;
      jits.scenario = name;
      jits.traffic = pattern;
      jits.policies = {Policy::kJitsD};
      jits.routings = {RoutingMode::kSp};
      jits.deadlines_s = {0.5, 1.0, 2.0};
      out.push_back(jits);

      ExperimentConfig speed = jits;
      speed.policies = {Policy::kFifo};
      speed.routings = {RoutingMode::kSpeed};
      speed.speed_setpoint_mps = 10000.0;
      out.push_back(speed);
    }
    return out;
  }
  throw std::invalid_argument("unknown figure family: " + family);
}

}  // namespace jitsim
