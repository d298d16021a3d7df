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
#include "pamdi/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "pamdi/engine.hpp"
#include "pamdi/oracle.hpp"

namespace pamdi {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

}  // namespace

ScenarioConfig apply_overrides(ScenarioConfig config, const Overrides& overrides) {
  if (overrides.algorithm) config.algorithm = *overrides.algorithm;
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.max_sim_time) config.max_sim_time = *overrides.max_sim_time;
  for (const auto& [sid, parts] : overrides.partitions) {
    bool found = false;
    for (auto& s : config.sources) {
      if (s.id == sid) {
        s.partitions = parts;
        s.explicit_cuts.clear();
        found = true;
      }
    }
    if (!found)
      throw std::runtime_error("partition override names unknown source '" + sid + "'");
  }
  return config;
}

RunResult run_scenario(const ScenarioConfig& config, const Overrides& overrides,
                       const std::string& output_dir) {
  RunResult result;
  try {
    result.config = apply_overrides(config, overrides);
  } catch (const std::exception& e) {
    result.exit_code = kExitValidation;
    result.error = e.what();
    return result;
  }
  result.violations = validate_scenario(result.config);
  if (!result.violations.empty()) {
    result.exit_code = kExitValidation;
    result.error = "scenario validation failed";
    return result;
  }
  try {
    const ResolvedScenario resolved = resolve_scenario(result.config);
    result.trace = run_simulation(resolved);
    result.metrics = per_source_metrics(result.trace);
  } catch (const std::exception& e) {
    result.exit_code = kExitRuntime;
    result.error = e.what();
    return result;
  }
  if (result.trace.deadlocked) {
    result.exit_code = kExitRuntime;
    result.error = "simulation deadlocked with work remaining";
  } else if (result.trace.truncated) {
    result.exit_code = kExitTruncated;
  }

  if (!output_dir.empty()) {
    const fs::path dir = fs::path(output_dir) /
                         (result.config.name + "__" + algorithm_name(result.config.algorithm) +
                          "__seed" + std::to_string(result.config.seed));
    fs::create_directories(dir);
    write_file(dir / "trace.txt", result.trace.text());
    write_file(dir / "metrics.json", metrics_json(result));
    std::string csv = summary_csv_header() + "\n";
    for (const auto& row : summary_csv_rows(result)) csv += row + "\n";
    write_file(dir / "summary.csv", csv);
  }
  return result;
}

RunResult run_scenario_file(const std::string& path, const Overrides& overrides,
                            const std::string& output_dir) {
  ScenarioConfig config;
  try {
    config = load_scenario_file(path);
  } catch (const std::exception& e) {
    RunResult result;
    result.exit_code = kExitValidation;
    result.error = e.what();
    return result;
  }
  return run_scenario(config, overrides, output_dir);
}

std::string metrics_json(const RunResult& result) {
  json j;
  j["scenario"] = result.config.name;
  j["algorithm"] = algorithm_name(result.config.algorithm);
  j["seed"] = result.config.seed;
  j["truncated"] = result.trace.truncated;
  j["deadlocked"] = result.trace.deadlocked;
  j["end_time_sec"] = result.trace.end_time;
  json per_source = json::array();
  for (const auto& m : result.metrics) {
    per_source.push_back({{"source_id", m.source_id},
                          {"host", m.host},
                          {"data_points", m.data_points},
                          {"results", m.results},
                          {"avg_inference_time_sec", m.avg_inference_time_sec},
                          {"min_inference_time_sec", m.min_inference_time_sec},
                          {"max_inference_time_sec", m.max_inference_time_sec},
                          {"first_result_at", m.first_result_at},
                          {"last_result_at", m.last_result_at}});
  }
  j["per_source"] = per_source;
  json counters;
  for (const auto& [k, v] : result.trace.counters) counters[k] = v;
  j["counters"] = counters;
  j["churn_events"] = result.trace.churn_events_occurred;
  if (!result.trace.churn_intervals.empty()) {
    double sum = 0.0;
    for (double v : result.trace.churn_intervals) sum += v;
    j["churn_schedule_mean_interval_sec"] =
        sum / static_cast<double>(result.trace.churn_intervals.size());
    j["churn_schedule_events"] = result.trace.churn_intervals.size();
  }
  return j.dump(2);
}

std::string summary_csv_header() {
  return "scenario,algorithm,seed,partitions,source,host,avg_inference_time_sec,results,"
         "data_points,end_time_sec,status";
}

std::vector<std::string> summary_csv_rows(const RunResult& result) {
  std::vector<std::string> rows;
  std::string partitions;
  for (const auto& s : result.config.sources) {
    if (!partitions.empty()) partitions += "/";
    partitions += s.id + "=" + std::to_string(s.partitions);
  }
  const char* status = result.trace.deadlocked  ? "deadlocked"
                       : result.trace.truncated ? "truncated"
                                                : "ok";
  for (const auto& m : result.metrics) {
    rows.push_back(result.config.name + "," + algorithm_name(result.config.algorithm) + "," +
                   std::to_string(result.config.seed) + "," + partitions + "," + m.source_id +
                   "," + m.host + "," + fmt(m.avg_inference_time_sec) + "," +
                   std::to_string(m.results) + "," + std::to_string(m.data_points) + "," +
                   fmt(result.trace.end_time) + "," + status);
  }
  return rows;
}

SweepResult run_sweep(const ScenarioConfig& base, const SweepSpec& spec,
                      const std::string& output_dir) {
  SweepResult result;
  std::vector<Algorithm> algorithms =
      spec.algorithms.empty() ? std::vector<Algorithm>{base.algorithm} : spec.algorithms;
  std::vector<std::uint64_t> seeds =
      spec.seeds.empty() ? std::vector<std::uint64_t>{base.seed} : spec.seeds;
  std::vector<std::map<SourceId, int>> partitions =
      spec.partitions.empty() ? std::vector<std::map<SourceId, int>>{{}} : spec.partitions;

  const std::uint64_t cells = static_cast<std::uint64_t>(algorithms.size()) * seeds.size() *
                              partitions.size();
  if (cells > spec.max_cells) {
    result.exit_code = kExitValidation;
    result.error = "sweep has " + std::to_string(cells) + " cells, cap is " +
                   std::to_string(spec.max_cells);
    return result;
  }

  for (const auto& algorithm : algorithms) {
    for (const auto& seed : seeds) {
      for (const auto& parts : partitions) {
        Overrides o;
        o.algorithm = algorithm;
        o.seed = seed;
        o.partitions = parts;
        RunResult cell = run_scenario(base, o, output_dir);
        ++result.cells_run;
        if (cell.exit_code == kExitOk || cell.exit_code == kExitTruncated) {
          for (const auto& row : summary_csv_rows(cell)) result.rows.push_back(row);
          if (cell.exit_code == kExitTruncated && result.exit_code == kExitOk)
            result.exit_code = kExitTruncated;
        } else {
          ++result.cells_failed;
          result.rows.push_back(base.name + "," + std::string(algorithm_name(algorithm)) + "," +
                                std::to_string(seed) + ",,,,,,,," +
                                (cell.error.empty() ? "failed" : "failed:" + cell.error));
        }
      }
    }
  }
  if (result.cells_failed > 0 && result.exit_code == kExitOk) result.exit_code = kExitRuntime;

  if (!output_dir.empty()) {
    fs::create_directories(output_dir);
    std::string csv = summary_csv_header() + "\n";
    for (const auto& row : result.rows) csv += row + "\n";
    write_file(fs::path(output_dir) / "results.csv", csv);
  }
  return result;
}

OracleRunResult run_oracle(const ScenarioConfig& config, const std::vector<double>& betas,
                           std::uint64_t cap, const std::string& output_dir) {
  OracleRunResult result;
  auto violations = validate_scenario(config);
  if (!violations.empty()) {
    result.exit_code = kExitValidation;
    result.error = "scenario validation failed: " + violations.front();
    return result;
  }
  try {
    const ResolvedScenario resolved = resolve_scenario(config);
    const OracleInstance instance(resolved);
    json report;
    report["scenario"] = config.name;
    report["tasks"] = instance.tasks().size();
    report["workers"] = instance.workers().size();
    json runs = json::array();
    for (double beta : betas.empty() ? default_beta_grid() : betas) {
      const BruteForceResult global = brute_force_optimal(instance, beta, cap);
      const PolicyAssignment joined = per_point_optima(instance, beta, cap);
      const double joined_objective = instance.objective(joined, beta);
      json assignment;
      for (const auto& [key, worker] : global.best.assignment) {
        const auto& [m, d, k] = key;
        assignment[m + "/" + std::to_string(d) + "/" + std::to_string(k)] = worker;
      }
      runs.push_back({{"beta", beta},
                      {"global_objective", global.best_objective},
                      {"joined_objective", joined_objective},
                      {"decomposition_exact", joined_objective == global.best_objective},
                      {"evaluated", global.evaluated},
                      {"assignment", assignment}});
    }
    report["runs"] = runs;
    result.report_json = report.dump(2);
  } catch (const std::exception& e) {
    result.exit_code = kExitRuntime;
    result.error = e.what();
    return result;
  }
  if (!output_dir.empty()) {
    fs::create_directories(output_dir);
    write_file(fs::path(output_dir) / (config.name + "__oracle.json"), result.report_json);
  }
  return result;
}

}  // namespace pamdi
