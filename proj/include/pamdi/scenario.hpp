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

#include "pamdi/churn.hpp"
#include "pamdi/cost.hpp"
#include "pamdi/model.hpp"
#include "pamdi/topology.hpp"

namespace pamdi {

enum class Algorithm { PaMdi, ArMdi, MsMdi, Local };

const char* algorithm_name(Algorithm a);
std::optional<Algorithm> algorithm_from_name(const std::string& name);

enum class ContentionModel { PerLink, SharedMedium };

struct WorkerConfig {
  WorkerId id;
  double seconds_per_flop = 0.0;
  bool mobile = false;
};

struct LinkConfig {
  WorkerId a;
  WorkerId b;
  double bandwidth_bytes_per_sec = 0.0;   // 0 -> scenario default
  double propagation_delay_sec = -1.0;    // <0 -> scenario default
};

struct SourceConfig {
  SourceId id;
  WorkerId host;
  std::string model;
  double priority_weight = 1.0;
  double accuracy_gain = 1.0;
  int num_data_points = 1;
  int partitions = 1;              // uniform split; ignored when cuts given
  std::vector<Cut> explicit_cuts;  // non-empty overrides `partitions`
};

/// Full declarative description of one experiment. Unknown keys in the file
/// are parse errors; every referenced id must resolve (validate_scenario).
struct ScenarioConfig {
  std::string name;
  std::string description;
  std::vector<ModelSpec> models;
  std::vector<WorkerConfig> workers;
  std::vector<LinkConfig> links;
  bool full_mesh = false;
  double default_bandwidth_bytes_per_sec = 2.5e6;  // ~20 Mbps
  double default_propagation_delay_sec = 0.001;
  std::vector<SourceConfig> sources;
  Algorithm algorithm = Algorithm::PaMdi;
  std::map<SourceId, std::vector<WorkerId>> ring_chains;  // baselines only
  std::optional<ChurnProcess> churn;
  std::uint64_t seed = 1;
  double max_sim_time = 1.0e6;
  std::uint64_t control_payload_bytes = 1024;
  double rtc_timeout_sec = 0.0;     // 0 -> 3x slowest incident one-hop RTT
  double status_timeout_sec = 0.0;  // 0 -> same rule
  ContentionModel contention = ContentionModel::PerLink;
  int ring_realloc_every = 10;
  std::map<WorkerId, double> failure_probs;  // oracle analysis only
};

// Empty iff every invariant holds and every referenced id resolves. Each
// violation names the offending field. Never throws on a well-formed config.
std::vector<std::string> validate_scenario(const ScenarioConfig& config);

// Parse / serialize. parse_scenario throws std::runtime_error with the JSON
// path on malformed input or unknown keys. `base_dir` resolves model file
// references.
ScenarioConfig parse_scenario(const std::string& json_text, const std::string& base_dir = "");
std::string serialize_scenario(const ScenarioConfig& config);
ScenarioConfig load_scenario_file(const std::string& path);

ModelSpec parse_model(const std::string& json_text);
std::string serialize_model(const ModelSpec& model);
ModelSpec load_model_file(const std::string& path);

/// Scenario with every reference resolved, ready to simulate. Construction
/// throws if validate_scenario(config) is non-empty.
struct ResolvedSource {
  SourceSpec spec;
  PartitionPlan plan;
  const ModelSpec* model = nullptr;
};

struct ResolvedScenario {
  ScenarioConfig config;
  Topology topology;
  std::map<std::string, ModelSpec> models;
  std::map<SourceId, ResolvedSource> sources;
};

ResolvedScenario resolve_scenario(const ScenarioConfig& config);

}  // namespace pamdi
