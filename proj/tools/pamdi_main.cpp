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
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pamdi/runner.hpp"

namespace {

using namespace pamdi;

// "ts=4" -> {ts, 4}
std::map<SourceId, int> parse_partition_args(const std::vector<std::string>& args) {
  std::map<SourceId, int> out;
  for (const auto& a : args) {
    const auto eq = a.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--partition expects <source>=<parts>, got '" + a + "'");
    out[a.substr(0, eq)] = std::stoi(a.substr(eq + 1));
  }
  return out;
}

// "ts=2/nts=4" -> one sweep cell
std::vector<std::map<SourceId, int>> parse_partition_cells(const std::vector<std::string>& cells) {
  std::vector<std::map<SourceId, int>> out;
  for (const auto& cell : cells) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : cell) {
      if (c == '/') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) parts.push_back(cur);
    out.push_back(parse_partition_args(parts));
  }
  return out;
}

void print_run_result(const RunResult& result) {
  if (!result.violations.empty()) {
    std::cerr << "scenario invalid:\n";
    for (const auto& v : result.violations) std::cerr << "  " << v << "\n";
    return;
  }
  if (!result.error.empty() && result.exit_code == kExitRuntime) {
    std::cerr << "error: " << result.error << "\n";
    return;
  }
  std::cout << summary_csv_header() << "\n";
  for (const auto& row : summary_csv_rows(result)) std::cout << row << "\n";
  if (result.trace.truncated) std::cerr << "warning: run truncated at max_sim_time\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-event simulator for priority-aware model-distributed inference"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string output_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string algorithm;
  double max_sim_time = 0.0;
  bool max_time_set = false;
  std::vector<std::string> partition_args;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("scenario", scenario_path, "scenario file (JSON)")->required();
    cmd->add_option("--output-dir", output_dir, "directory for trace/metrics artifacts");
    cmd->add_option("--seed", seed, "override the scenario seed")->each([&](const std::string&) {
      seed_set = true;
    });
    cmd->add_option("--algorithm", algorithm, "override: PA-MDI, AR-MDI, MS-MDI or Local");
    cmd->add_option("--max-sim-time", max_sim_time, "override the simulated-time cap (seconds)")
        ->each([&](const std::string&) { max_time_set = true; });
    cmd->add_option("--partition", partition_args,
                    "override a source's uniform split, e.g. --partition ts=4");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run one scenario");
  add_common(run_cmd);

  CLI::App* validate_cmd = app.add_subcommand("validate", "validate a scenario file");
  validate_cmd->add_option("scenario", scenario_path, "scenario file (JSON)")->required();

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a scenario over a parameter grid");
  std::vector<std::string> sweep_algorithms;
  std::vector<std::uint64_t> sweep_seeds;
  std::vector<std::string> sweep_partitions;
  sweep_cmd->add_option("scenario", scenario_path, "base scenario file (JSON)")->required();
  sweep_cmd->add_option("--output-dir", output_dir, "directory for results.csv and per-cell runs");
  sweep_cmd->add_option("--algorithms", sweep_algorithms, "algorithms to sweep")->delimiter(',');
  sweep_cmd->add_option("--seeds", sweep_seeds, "seeds to sweep")->delimiter(',');
  sweep_cmd->add_option("--partitions", sweep_partitions,
                        "partition cells, e.g. ts=2/nts=2,ts=4/nts=2")
      ->delimiter(',');

  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "brute-force policy oracle on a small scenario");
  std::vector<double> betas;
  std::uint64_t cap = 1000000;
  oracle_cmd->add_option("scenario", scenario_path, "scenario file (JSON)")->required();
  oracle_cmd->add_option("--output-dir", output_dir, "directory for the oracle report");
  oracle_cmd->add_option("--beta", betas, "beta values (default 0.01,0.1,1,10)")->delimiter(',');
  oracle_cmd->add_option("--cap", cap, "enumeration cap (default 1e6)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(validate_cmd)) {
      ScenarioConfig config;
      try {
        config = load_scenario_file(scenario_path);
      } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
      }
      const auto violations = validate_scenario(config);
      if (violations.empty()) {
        std::cout << "ok: " << config.name << "\n";
        return kExitOk;
      }
      for (const auto& v : violations) std::cerr << v << "\n";
      return kExitValidation;
    }

    Overrides overrides;
    if (seed_set) overrides.seed = seed;
    if (max_time_set) overrides.max_sim_time = max_sim_time;
    if (!algorithm.empty()) {
      auto a = algorithm_from_name(algorithm);
      if (!a) {
        std::cerr << "unknown algorithm '" << algorithm << "'\n";
        return kExitValidation;
      }
      overrides.algorithm = *a;
    }
    if (!partition_args.empty()) overrides.partitions = parse_partition_args(partition_args);

    if (app.got_subcommand(run_cmd)) {
      const RunResult result = run_scenario_file(scenario_path, overrides, output_dir);
      print_run_result(result);
      return result.exit_code;
    }

    if (app.got_subcommand(sweep_cmd)) {
      ScenarioConfig base;
      try {
        base = load_scenario_file(scenario_path);
      } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
      }
      SweepSpec spec;
      for (const auto& name : sweep_algorithms) {
        auto a = algorithm_from_name(name);
        if (!a) {
          std::cerr << "unknown algorithm '" << name << "'\n";
          return kExitValidation;
        }
        spec.algorithms.push_back(*a);
      }
      spec.seeds = sweep_seeds;
      spec.partitions = parse_partition_cells(sweep_partitions);
      const SweepResult result = run_sweep(base, spec, output_dir);
      if (!result.error.empty()) {
        std::cerr << "error: " << result.error << "\n";
        return result.exit_code;
      }
      std::cout << summary_csv_header() << "\n";
      for (const auto& row : result.rows) std::cout << row << "\n";
      std::cerr << result.cells_run << " cells, " << result.cells_failed << " failed\n";
      return result.exit_code;
    }

    if (app.got_subcommand(oracle_cmd)) {
      ScenarioConfig config;
      try {
        config = load_scenario_file(scenario_path);
      } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
      }
      const OracleRunResult result = run_oracle(config, betas, cap, output_dir);
      if (!result.error.empty()) {
        std::cerr << "error: " << result.error << "\n";
        return result.exit_code;
      }
      std::cout << result.report_json << "\n";
      return result.exit_code;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}
