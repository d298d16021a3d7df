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
#include <algorithm>
#include <random>

#include <stdexcept>

#include "doctest.h"
#include "pamdi/metrics.hpp"

using namespace pamdi;

namespace {

SimulationTrace synthetic_trace(int data_points, int partitions) {
  SimulationTrace trace;
  SourceSummary s;
  s.source_id = "s";
  s.host = "A";
  s.num_data_points = data_points;
  s.partitions = partitions;
  s.admitted = data_points;
  s.results = data_points;
  trace.sources["s"] = s;
  return trace;
}

}  // namespace

TEST_CASE("average inference time sums per-task durations per data point") {
  SUBCASE("K=1, every task takes 2 s") {
    auto trace = synthetic_trace(3, 1);
    for (int d = 1; d <= 3; ++d) {
      trace.tasks.push_back({"s", d, 1, d * 10.0, d * 10.0 + 2.0, "A"});
      trace.results.push_back({"s", d, d * 10.0 + 2.0});
    }
    CHECK(average_inference_time(trace, "s") == doctest::Approx(2.0));
  }
  SUBCASE("K=2 with 1 s and 3 s per-task latencies") {
    auto trace = synthetic_trace(2, 2);
    for (int d = 1; d <= 2; ++d) {
      trace.tasks.push_back({"s", d, 1, 0.0, 1.0, "A"});
      trace.tasks.push_back({"s", d, 2, 1.0, 4.0, "B"});
      trace.results.push_back({"s", d, 4.0});
    }
    CHECK(average_inference_time(trace, "s") == doctest::Approx(4.0));
  }
  SUBCASE("missing task is an error naming the hole") {
    auto trace = synthetic_trace(2, 2);
    trace.tasks.push_back({"s", 1, 1, 0.0, 1.0, "A"});
    trace.tasks.push_back({"s", 1, 2, 1.0, 4.0, "B"});
    trace.tasks.push_back({"s", 2, 1, 0.0, 1.0, "A"});
    CHECK_THROWS_WITH_AS(average_inference_time(trace, "s"),
                         "trace incomplete for source 's': missing (d=2, k=2)",
                         std::runtime_error);
  }
  SUBCASE("unknown source is an error") {
    auto trace = synthetic_trace(1, 1);
    CHECK_THROWS_AS(average_inference_time(trace, "zzz"), std::runtime_error);
  }
}

TEST_CASE("metric is invariant under record reordering") {
  std::mt19937 rng(4);
  auto trace = synthetic_trace(5, 3);
  for (int d = 1; d <= 5; ++d) {
    for (int k = 1; k <= 3; ++k) {
      const double created = d * 7.0 + k;
      trace.tasks.push_back({"s", d, k, created, created + 0.5 * k, "A"});
    }
    trace.results.push_back({"s", d, d * 7.0 + 10.0});
  }
  const double base = average_inference_time(trace, "s");
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(trace.tasks.begin(), trace.tasks.end(), rng);
    CHECK(average_inference_time(trace, "s") == doctest::Approx(base).epsilon(1e-15));
  }
}
