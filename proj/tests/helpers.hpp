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

#include <string>

#include "pamdi/scenario.hpp"

namespace pamdi::testing {

inline ModelSpec test_model(const std::string& id, int layers, double flops_per_layer,
                            std::uint64_t feature_bytes, std::uint64_t input_bytes = 100000,
                            std::uint64_t output_bytes = 1000) {
  ModelSpec m;
  m.model_id = id;
  m.input_size_bytes = input_bytes;
  m.output_size_bytes = output_bytes;
  for (int i = 1; i <= layers; ++i) m.layers.push_back({i, flops_per_layer, feature_bytes});
  return m;
}

// Single worker, single source, K partitions, D data points.
inline ScenarioConfig degenerate_scenario(int partitions, int data_points,
                                          double flops_per_layer = 1e9, double spf = 1e-9) {
  ScenarioConfig cfg;
  cfg.name = "degenerate";
  cfg.models.push_back(test_model("m", 4, flops_per_layer, 1000));
  cfg.workers.push_back({"A", spf, false});
  cfg.sources.push_back({"s", "A", "m", 1.0, 1.0, data_points, partitions, {}});
  cfg.algorithm = Algorithm::Local;
  cfg.seed = 1;
  cfg.max_sim_time = 1e9;
  return cfg;
}

// Slow source S plus a 10x faster helper H on one link; stage 2 of a
// two-part uniform model always offloads.
inline ScenarioConfig pipeline_scenario(int data_points) {
  ScenarioConfig cfg;
  cfg.name = "pipeline2";
  cfg.models.push_back(test_model("m", 10, 1e9, 1250000, 1250000, 1000));
  cfg.workers.push_back({"H", 2e-11, false});
  cfg.workers.push_back({"S", 2e-10, false});
  cfg.links.push_back({"S", "H", 2.5e6, 0.001});
  cfg.sources.push_back({"s", "S", "m", 1.0, 1.0, data_points, 2, {}});
  cfg.algorithm = Algorithm::PaMdi;
  cfg.seed = 1;
  cfg.max_sim_time = 1e9;
  return cfg;
}

// Fully connected mesh with one fast magnet worker; several sources contend
// for it with RTC/CTC.
inline ScenarioConfig contention_scenario(int data_points, std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.name = "contention";
  cfg.models.push_back(test_model("m", 6, 5e8, 20000, 20000, 500));
  cfg.workers.push_back({"A", 1e-9, false});
  cfg.workers.push_back({"B", 1e-9, false});
  cfg.workers.push_back({"C", 1e-10, false});  // the magnet
  cfg.workers.push_back({"D", 1e-9, false});
  cfg.full_mesh = true;
  cfg.default_bandwidth_bytes_per_sec = 1e7;
  cfg.default_propagation_delay_sec = 0.0005;
  cfg.sources.push_back({"s1", "A", "m", 1.0, 1.0, data_points, 2, {}});
  cfg.sources.push_back({"s2", "B", "m", 2.0, 1.0, data_points, 2, {}});
  cfg.sources.push_back({"s3", "D", "m", 4.0, 1.0, data_points, 2, {}});
  cfg.algorithm = Algorithm::PaMdi;
  cfg.seed = seed;
  cfg.max_sim_time = 1e9;
  return cfg;
}

// 5-node ring scenario for the baseline policies.
inline ScenarioConfig ring_scenario(Algorithm algorithm, int data_points,
                                    double helper_spf = 1e-9) {
  ScenarioConfig cfg;
  cfg.name = "ring5";
  cfg.models.push_back(test_model("m", 10, 1e9, 50000, 50000, 500));
  for (char c = 'A'; c <= 'E'; ++c)
    cfg.workers.push_back({std::string(1, c), helper_spf, false});
  cfg.full_mesh = true;
  cfg.default_bandwidth_bytes_per_sec = 1e7;
  cfg.default_propagation_delay_sec = 0.0005;
  cfg.sources.push_back({"s", "A", "m", 1.0, 1.0, data_points, 1, {}});
  cfg.ring_chains["s"] = {"A", "B", "C", "D", "E"};
  cfg.algorithm = algorithm;
  cfg.seed = 1;
  cfg.max_sim_time = 1e9;
  return cfg;
}

}  // namespace pamdi::testing
