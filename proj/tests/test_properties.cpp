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

// Whole-scenario properties checked on the shipped scenario files.

#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "pamdi/metrics.hpp"
#include "pamdi/runner.hpp"

using namespace pamdi;

namespace {

std::string repo(const std::string& rel) { return std::string(PAMDI_REPO_DIR) + "/" + rel; }

double ts_avg(const RunResult& r) {
  for (const auto& m : r.metrics)
    if (m.source_id == "ts") return m.avg_inference_time_sec;
  throw std::runtime_error("no ts source");
}

}  // namespace

TEST_CASE("raising a source's priority never slows it down (within 2%)") {
  auto cfg = load_scenario_file(repo("scenarios/multihop6_A0_D1.json"));
  std::vector<double> gammas{0.5, 1.0, 2.0, 10.0, 50.0};
  double prev = -1.0;
  for (double g : gammas) {
    auto variant = cfg;
    for (auto& s : variant.sources)
      if (s.id == "ts") s.priority_weight = g;
    const RunResult r = run_scenario(variant, {}, "");
    REQUIRE(r.exit_code == kExitOk);
    const double avg = ts_avg(r);
    if (prev >= 0.0) CHECK(avg <= prev * 1.02);
    prev = avg;
  }
}

TEST_CASE("every shipped scenario file is valid and round-trips") {
  const std::vector<std::string> shipped = {
      "scenarios/jetson5_ts_small.json",    "scenarios/jetson5_ts_large.json",
      "scenarios/jetson5_both_large.json",  "scenarios/multihop6_A0_D1.json",
      "scenarios/multihop6_A1_D0.json",     "scenarios/multihop6_churn.json",
      "scenarios/colosseum_gpt2_b16_b12.json", "scenarios/colosseum_gpt2_b12_b16.json",
      "scenarios/pipeline2_sanity.json",    "scenarios/oracle_small.json",
  };
  for (const auto& rel : shipped) {
    INFO(rel);
    auto cfg = load_scenario_file(repo(rel));
    CHECK(validate_scenario(cfg).empty());
    const std::string text = serialize_scenario(cfg);
    auto reparsed = parse_scenario(text);
    CHECK(serialize_scenario(reparsed) == text);
  }
}

TEST_CASE("built-in models load and the ResNet-50 sanity values hold") {
  auto m = load_model_file(repo("data/models/resnet50_224.json"));
  CHECK(m.layer_count() == 23);
  CHECK(m.input_size_bytes == 224 * 224 * 3 * 4);
  // Total conv+aux work lands in the usual ballpark for 224x224 input.
  CHECK(m.total_flops() > 7e9);
  CHECK(m.total_flops() < 9e9);
  auto plan = uniform_partition(m, 2);
  CHECK(plan.cuts[0].end_layer == 12);

  auto r56 = load_model_file(repo("data/models/resnet56_32.json"));
  CHECK(r56.layer_count() == 33);
  auto gpt = load_model_file(repo("data/models/gpt2s_seq64_b12.json"));
  CHECK(gpt.layer_count() == 12);
}

TEST_CASE("churn scenario: admitted work always completes, per seed") {
  auto cfg = load_scenario_file(repo("scenarios/multihop6_churn.json"));
  for (auto& s : cfg.sources) s.num_data_points = 30;  // keep the unit test quick
  for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
    Overrides o;
    o.seed = seed;
    const RunResult r = run_scenario(cfg, o, "");
    REQUIRE(r.exit_code == kExitOk);
    for (const auto& [sid, summary] : r.trace.sources) {
      CHECK(summary.results == summary.num_data_points);
      CHECK(summary.admitted == summary.num_data_points);
    }
  }
}
