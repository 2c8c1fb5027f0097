#pragma once

#include <string>
#include <vector>

#include "jitsim/config.h"
#include "jitsim/metrics.h"

namespace jitsim {

// One CSV row: one run, one traffic level.
struct ResultRow {
  std::string scenario;
  Policy policy;
  RoutingMode routing;
  SpeedVariant speed_variant;
  double deadline_s = 0.0;
  int level = 0;
  std::uint64_t seed = 0;
  LevelMetrics m;
};

// Mean over seeds for one (scenario, policy, routing, deadline, level).
struct AggregateRow {
  std::string scenario;
  Policy policy;
  RoutingMode routing;
  SpeedVariant speed_variant;
  double deadline_s = 0.0;
  int level = 0;
  int runs = 0;
  double miss_ratio = 0.0;
  double drop_ratio = 0.0;
  double avg_delay_ms = 0.0;
  double max_delay_ms = 0.0;
  double avg_hops = 0.0;
};

// Executes every run, up to `threads` in parallel (runs share nothing).
// Row order is deterministic regardless of scheduling. Throws if any run
// aborts.
std::vector<ResultRow> run_all(const std::vector<ExpandedRun>& runs,
                               int threads);

std::string raw_csv_header();
std::string to_csv(const ResultRow& r);
std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows);

void write_raw_csv(const std::string& path, const std::vector<ResultRow>& rows);
void write_aggregate_csv(const std::string& path,
                         const std::vector<AggregateRow>& rows);

// One whitespace-delimited (deadline, value) series file per series per
// metric: <family>_<series>_<metric>.dat under dir.
void emit_plot_data(const std::string& dir, const std::string& family,
                    const std::vector<AggregateRow>& rows);

// The experiment families of the evaluation, as ready-made presets. A
// family may need several sweep matrices (e.g. a SPEED stack next to a
// JiTS stack); each entry expands independently into the same result set.
std::vector<std::string> list_families();
std::vector<ExperimentConfig> replicate_family(const std::string& family);

// Reads JITS_SIM_THREADS; falls back to the hardware concurrency.
int runner_threads();

}  // namespace jitsim
