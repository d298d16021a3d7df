/*
 * Copyright 2026 pamdi-sim authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pamdi/metrics.hpp"
#include "pamdi/scenario.hpp"
#include "pamdi/trace.hpp"

namespace pamdi {

// Exit codes shared by the library entry points and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;
inline constexpr int kExitTruncated = 3;

struct Overrides {
  std::optional<Algorithm> algorithm;
  std::optional<std::uint64_t> seed;
  std::optional<double> max_sim_time;
  std::map<SourceId, int> partitions;  // uniform split per source
};

ScenarioConfig apply_overrides(ScenarioConfig config, const Overrides& overrides);

struct RunResult {
  int exit_code = kExitOk;
  std::vector<std::string> violations;
  std::string error;
  SimulationTrace trace;
  std::vector<SourceMetrics> metrics;
  ScenarioConfig config;  // after overrides
};

// Runs one scenario. When output_dir is non-empty, writes trace.txt,
// metrics.json and summary.csv into <output_dir>/<name>__<algorithm>__seed<n>/.
RunResult run_scenario(const ScenarioConfig& config, const Overrides& overrides,
                       const std::string& output_dir);
RunResult run_scenario_file(const std::string& path, const Overrides& overrides,
                            const std::string& output_dir);

std::string metrics_json(const RunResult& result);
// One CSV row per source: scenario,algorithm,seed,partitions,source,host,
// avg_inference_time_sec,results,data_points,end_time,status
std::string summary_csv_header();
std::vector<std::string> summary_csv_rows(const RunResult& result);

struct SweepSpec {
  std::vector<Algorithm> algorithms;                // empty -> scenario's own
  std::vector<std::uint64_t> seeds;                 // empty -> scenario's own
  std::vector<std::map<SourceId, int>> partitions;  // empty -> scenario's own
  std::uint64_t max_cells = 4096;
};

struct SweepResult {
  int exit_code = kExitOk;
  std::string error;
  std::vector<std::string> rows;  // summary rows across all cells
  int cells_run = 0;
  int cells_failed = 0;
};

// Cartesian product of the sweep dimensions over a base scenario; each cell
// is an independent run. Per-cell failures are recorded and the sweep
// continues. Writes results.csv under output_dir when given.
SweepResult run_sweep(const ScenarioConfig& base, const SweepSpec& spec,
                      const std::string& output_dir);

struct OracleRunResult {
  int exit_code = kExitOk;
  std::string error;
  std::string report_json;
};

// Brute-force policy oracle over a small static scenario, for each beta:
// global optimum, joined per-(m,d) optima, and the decomposition check.
OracleRunResult run_oracle(const ScenarioConfig& config, const std::vector<double>& betas,
                           std::uint64_t cap, const std::string& output_dir);

}  // namespace pamdi
