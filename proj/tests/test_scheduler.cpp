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
#include "pamdi/scheduler.hpp"

using namespace pamdi;

namespace {

Task mk(const SourceId& sid, int d, int k, SimTime created, double flops = 1e9) {
  Task t;
  t.source_id = sid;
  t.data_index = d;
  t.partition_index = k;
  t.created_at = created;
  t.flops = flops;
  return t;
}

}  // namespace

TEST_CASE("fetch order: priority weight first, then age, then ids") {
  TaskQueue q;
  CHECK_FALSE(q.fetch_next().has_value());

  SUBCASE("higher priority wins regardless of age") {
    q.insert(mk("low", 1, 1, 0.0), 1.0);     // aged 100 s at fetch
    q.insert(mk("high", 1, 1, 99.0), 10.0);  // aged 1 s
    auto t = q.fetch_next();
    REQUIRE(t);
    CHECK(t->source_id == "high");
  }
  SUBCASE("equal priority: oldest first") {
    q.insert(mk("a", 1, 1, 5.0), 10.0);  // aged 2 s at t=7
    q.insert(mk("a", 2, 1, 2.0), 10.0);  // aged 5 s
    auto t = q.fetch_next();
    REQUIRE(t);
    CHECK(t->data_index == 2);
  }
  SUBCASE("full tie: source, data, partition ascending") {
    q.insert(mk("b", 1, 2, 1.0), 1.0);
    q.insert(mk("b", 1, 1, 1.0), 1.0);
    q.insert(mk("a", 2, 1, 1.0), 1.0);
    auto t = q.fetch_next();
    REQUIRE(t);
    CHECK(t->source_id == "a");
    t = q.fetch_next();
    CHECK(t->partition_index == 1);
    t = q.fetch_next();
    CHECK(t->partition_index == 2);
  }
}

TEST_CASE("decide_offload hand-checked against the score formula") {
  // self: backlog 5 s, 0.2 s/GFLOP; neighbor B: link 0.5 s, backlog 0;
  // 10 GFLOP task, zero age, unit priority -> self 7.0, B 2.5.
  Task t = mk("s", 1, 1, 0.0, 1e10);
  std::vector<CandidateStatus> cands = {
      {"A", 0.0, 2e-10, 5.0},
      {"B", 0.5, 2e-10, 0.0},
  };
  auto dec = decide_offload(t, "A", cands, 1.0, 1.0, 0.0);
  CHECK(dec.per_candidate_scores.at("A") == doctest::Approx(7.0));
  CHECK(dec.per_candidate_scores.at("B") == doctest::Approx(2.5));
  CHECK(dec.chosen_worker == "B");
  CHECK(dec.score == doctest::Approx(2.5));
}

TEST_CASE("decide_offload: singleton, ties, errors") {
  Task t = mk("s", 1, 1, 0.0, 1e9);
  SUBCASE("single candidate = self") {
    std::vector<CandidateStatus> cands = {{"A", 0.0, 1e-9, 0.0}};
    CHECK(decide_offload(t, "A", cands, 2.0, 1.0, 0.0).chosen_worker == "A");
  }
  SUBCASE("identical scores go to the lowest worker id") {
    std::vector<CandidateStatus> cands = {
        {"C", 0.0, 1e-9, 0.0},
        {"B", 0.0, 1e-9, 0.0},
    };
    CHECK(decide_offload(t, "C", cands, 1.0, 1.0, 0.0).chosen_worker == "B");
  }
  SUBCASE("empty candidate set throws") {
    std::vector<CandidateStatus> cands;
    CHECK_THROWS_AS(decide_offload(t, "A", cands, 1.0, 1.0, 0.0), std::invalid_argument);
  }
}

TEST_CASE("scaling the priority denominator never changes the chosen worker") {
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Task t = mk("s", 1, 1, 0.0, 1e8 + u(rng) * 1e10);
    t.created_at = -u(rng) * 10.0;  // age at now=0
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<CandidateStatus> cands;
    for (int i = 0; i < n; ++i) {
      cands.push_back({WorkerId(1, static_cast<char>('A' + i)), i == 0 ? 0.0 : u(rng) * 2.0,
                       1e-10 + u(rng) * 1e-9, u(rng) * 5.0});
    }
    const double gamma = 0.1 + u(rng) * 20.0;
    const double alpha = 0.1 + u(rng) * 2.0;
    const double c = 0.001 + u(rng) * 1000.0;
    auto base = decide_offload(t, "A", cands, gamma, alpha, 0.0);
    auto scaled = decide_offload(t, "A", cands, gamma * c, alpha, 0.0);
    CHECK(base.chosen_worker == scaled.chosen_worker);
  }
}

TEST_CASE("task age enters every score equally") {
  Task young = mk("s", 1, 1, 10.0, 1e9);
  Task old = mk("s", 1, 1, 0.0, 1e9);
  std::vector<CandidateStatus> cands = {
      {"A", 0.0, 1e-9, 0.0},
      {"B", 0.2, 1e-9, 0.0},
  };
  auto dy = decide_offload(young, "A", cands, 1.0, 1.0, 10.0);
  auto dold = decide_offload(old, "A", cands, 1.0, 1.0, 10.0);
  CHECK(dold.per_candidate_scores.at("A") - dy.per_candidate_scores.at("A") ==
        doctest::Approx(10.0));
  CHECK(dy.chosen_worker == dold.chosen_worker);
}
