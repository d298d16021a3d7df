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
#include <random>

#include <stdexcept>

#include "doctest.h"
#include "pamdi/model.hpp"

using namespace pamdi;

namespace {

ModelSpec uniform_model(int layers, double flops_per_layer, std::uint64_t bytes_per_layer) {
  ModelSpec m;
  m.model_id = "uniform";
  m.input_size_bytes = 1000;
  m.output_size_bytes = 10;
  for (int i = 1; i <= layers; ++i) m.layers.push_back({i, flops_per_layer, bytes_per_layer});
  return m;
}

ModelSpec random_model(std::mt19937& rng, int layers) {
  std::uniform_real_distribution<double> flops(1e6, 1e9);
  std::uniform_int_distribution<std::uint64_t> bytes(100, 1000000);
  ModelSpec m;
  m.model_id = "random";
  m.input_size_bytes = bytes(rng);
  m.output_size_bytes = bytes(rng);
  for (int i = 1; i <= layers; ++i) m.layers.push_back({i, flops(rng), bytes(rng)});
  return m;
}

}  // namespace

TEST_CASE("uniform partition matches the 12/11 split of a 23-block model") {
  auto m = uniform_model(23, 1e9, 1024);
  auto plan = uniform_partition(m, 2);
  REQUIRE(plan.partition_count() == 2);
  CHECK(plan.cuts[0].begin_layer == 1);
  CHECK(plan.cuts[0].end_layer == 12);
  CHECK(plan.cuts[1].begin_layer == 13);
  CHECK(plan.cuts[1].end_layer == 23);
}

TEST_CASE("task_flops sums layers within one cut") {
  auto m = uniform_model(10, 1e9, 1024);
  PartitionPlan plan{"uniform", {{1, 5}, {6, 10}}};
  CHECK(task_flops(plan, m, 1) == doctest::Approx(5e9));
  CHECK(task_flops(plan, m, 2) == doctest::Approx(5e9));

  SUBCASE("single-cut plan is the whole model") {
    PartitionPlan whole{"uniform", {{1, 10}}};
    CHECK(task_flops(whole, m, 1) == doctest::Approx(m.total_flops()));
  }
  SUBCASE("out-of-range partition index throws") {
    CHECK_THROWS_AS(task_flops(plan, m, 0), std::out_of_range);
    CHECK_THROWS_AS(task_flops(plan, m, 3), std::out_of_range);
  }
}

TEST_CASE("task_flops of the last cut matches direct summation over the table") {
  // Independent oracle: sum the per-layer table directly.
  std::mt19937 rng(42);
  auto m = random_model(rng, 23);
  auto plan = uniform_partition(m, 2);
  double direct = 0.0;
  for (int l = 13; l <= 23; ++l) direct += m.layers[static_cast<size_t>(l - 1)].flops;
  CHECK(task_flops(plan, m, 2) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("partitions conserve work and reproduce the layer range") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int layers = 1 + static_cast<int>(rng() % 40);
    auto m = random_model(rng, layers);
    const int parts = 1 + static_cast<int>(rng() % layers);
    auto plan = uniform_partition(m, parts);

    // Round trip: concatenating the cut ranges reproduces 1..L exactly.
    int expect = 1;
    for (const Cut& c : plan.cuts) {
      CHECK(c.begin_layer == expect);
      CHECK(c.end_layer >= c.begin_layer);
      expect = c.end_layer + 1;
    }
    CHECK(expect == layers + 1);

    // Work conservation.
    double total = 0.0;
    for (int k = 1; k <= parts; ++k) total += task_flops(plan, m, k);
    CHECK(total == doctest::Approx(m.total_flops()).epsilon(1e-9));

    // Pipeline handoff: bytes leaving cut k enter cut k+1.
    for (int k = 1; k < parts; ++k) {
      CHECK(partition_output_bytes(plan, m, k) == partition_input_bytes(plan, m, k + 1));
    }
    CHECK(partition_input_bytes(plan, m, 1) == m.input_size_bytes);
    CHECK(partition_output_bytes(plan, m, parts) == m.output_size_bytes);
  }
}

TEST_CASE("make_task fills byte and flop fields from the plan") {
  auto m = uniform_model(10, 2e9, 4096);
  auto plan = uniform_partition(m, 3);  // 4,3,3
  SourceSpec src;
  src.source_id = "s";
  src.host_worker = "A";
  src.model_id = "uniform";
  Task t = make_task(src, plan, m, 2, 5, 1.5);
  CHECK(t.partition_index == 2);
  CHECK(t.data_index == 5);
  CHECK(t.created_at == 1.5);
  CHECK(t.flops == doctest::Approx(6e9));
  CHECK(t.input_bytes == 4096);
  CHECK(t.age(2.0) == doctest::Approx(0.5));
}

TEST_CASE("uniform partition rejects degenerate splits") {
  auto m = uniform_model(4, 1e9, 64);
  CHECK_THROWS_AS(uniform_partition(m, 0), std::invalid_argument);
  CHECK_THROWS_AS(uniform_partition(m, 5), std::invalid_argument);
}
