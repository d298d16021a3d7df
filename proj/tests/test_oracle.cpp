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
#include "helpers.hpp"
#include "pamdi/oracle.hpp"
#include "pamdi/scheduler.hpp"

using namespace pamdi;
using namespace pamdi::testing;

namespace {

// Small static instance: `workers` full mesh, one source at the first worker.
ScenarioConfig small_instance(int workers, int data_points, int partitions) {
  ScenarioConfig cfg;
  cfg.name = "oracle_instance";
  cfg.models.push_back(test_model("m", 6, 1e9, 250000, 250000, 1000));
  for (int i = 0; i < workers; ++i)
    cfg.workers.push_back({WorkerId(1, static_cast<char>('A' + i)), 1e-9 * (i + 1), false});
  cfg.full_mesh = true;
  cfg.default_bandwidth_bytes_per_sec = 2.5e6;
  cfg.default_propagation_delay_sec = 0.001;
  cfg.sources.push_back({"s", "A", "m", 2.0, 1.0, data_points, partitions, {}});
  cfg.algorithm = Algorithm::PaMdi;
  return cfg;
}

}  // namespace

TEST_CASE("objective: accuracy-only when beta is zero and failures vanish") {
  auto cfg = small_instance(3, 2, 2);
  cfg.sources[0].priority_weight = 3.0;
  cfg.sources[0].accuracy_gain = 0.5;
  auto resolved = resolve_scenario(cfg);
  OracleInstance inst(resolved);
  PolicyAssignment all_local;
  for (const auto& key : inst.tasks()) all_local.assignment[key] = "A";
  // gamma * D * alpha = 3 * 2 * 0.5
  CHECK(inst.objective(all_local, 0.0) == doctest::Approx(3.0));
}

TEST_CASE("objective: a certain failure wipes out a point's accuracy") {
  auto cfg = small_instance(2, 1, 2);
  cfg.failure_probs["B"] = 1.0;
  auto resolved = resolve_scenario(cfg);
  OracleInstance inst(resolved);
  PolicyAssignment pi;
  pi.assignment[{"s", 1, 1}] = "A";
  pi.assignment[{"s", 1, 2}] = "B";
  CHECK(inst.objective(pi, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("objective: J difference equals beta times the delay difference") {
  auto cfg = small_instance(2, 1, 1);
  auto resolved = resolve_scenario(cfg);
  OracleInstance inst(resolved);
  PolicyAssignment local, remote;
  local.assignment[{"s", 1, 1}] = "A";
  remote.assignment[{"s", 1, 1}] = "B";
  const double beta = 0.7;
  const double d_local = inst.task_delay({"s", 1, 1}, "A", "A");
  const double d_remote = inst.task_delay({"s", 1, 1}, "B", "A");
  CHECK(inst.objective(local, beta) - inst.objective(remote, beta) ==
        doctest::Approx(beta * (d_remote - d_local)));
}

TEST_CASE("brute force: single task picks the ratio minimizer") {
  auto cfg = small_instance(3, 1, 1);
  auto resolved = resolve_scenario(cfg);
  OracleInstance inst(resolved);
  const auto result = brute_force_optimal(inst, 1.0);
  CHECK(result.evaluated == 3);
  // One task: minimizing delay maximizes J, and with P=0 the ratio
  // minimizer is the same worker.
  const WorkerId expect = per_task_ratio_minimizer(inst, {"s", 1, 1}, "A", {"A", "B", "C"});
  CHECK(result.best.assignment.at({"s", 1, 1}) == expect);
}

TEST_CASE("brute force respects the enumeration cap") {
  auto cfg = small_instance(4, 3, 2);  // 4^6 = 4096
  auto resolved = resolve_scenario(cfg);
  OracleInstance inst(resolved);
  CHECK_THROWS_AS(brute_force_optimal(inst, 1.0, 1000), std::runtime_error);
  CHECK_NOTHROW(brute_force_optimal(inst, 1.0, 5000));
}

TEST_CASE("decomposition: joined per-point optima equal the global optimum") {
  // 2 sources x 2 data points x 2 partitions x 3 workers.
  auto cfg = small_instance(3, 2, 2);
  cfg.sources.push_back({"t", "B", "m", 5.0, 2.0, 2, 2, {}});
  cfg.failure_probs["C"] = 0.25;
  auto resolved = resolve_scenario(cfg);
  OracleInstance inst(resolved);
  for (double beta : default_beta_grid()) {
    const auto global = brute_force_optimal(inst, beta, 1u << 24);
    const auto joined = per_point_optima(inst, beta);
    CHECK(inst.objective(joined, beta) == global.best_objective);
  }
}

TEST_CASE("objective is invariant under worker relabeling") {
  auto cfg = small_instance(3, 1, 2);
  auto resolved = resolve_scenario(cfg);
  OracleInstance inst(resolved);

  // Swap the roles of B and C everywhere: same speeds, same links (full mesh
  // with identical parameters), so J must not change.
  auto cfg2 = cfg;
  cfg2.workers[1].seconds_per_flop = cfg.workers[2].seconds_per_flop;
  cfg2.workers[2].seconds_per_flop = cfg.workers[1].seconds_per_flop;
  auto resolved2 = resolve_scenario(cfg2);
  OracleInstance inst2(resolved2);

  PolicyAssignment pi, pi_swapped;
  pi.assignment[{"s", 1, 1}] = "B";
  pi.assignment[{"s", 1, 2}] = "C";
  pi_swapped.assignment[{"s", 1, 1}] = "C";
  pi_swapped.assignment[{"s", 1, 2}] = "B";
  for (double beta : default_beta_grid()) {
    CHECK(inst.objective(pi, beta) == doctest::Approx(inst2.objective(pi_swapped, beta)));
  }
}

TEST_CASE("greedy rule equals the oracle on randomized single decisions") {
  std::mt19937 rng(555);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int workers = 2 + static_cast<int>(rng() % 3);
    ScenarioConfig cfg;
    cfg.name = "rand";
    cfg.models.push_back(test_model("m", 4, 5e8 + u(rng) * 5e9, 10000 + rng() % 500000));
    for (int i = 0; i < workers; ++i)
      cfg.workers.push_back(
          {WorkerId(1, static_cast<char>('A' + i)), 1e-10 + u(rng) * 3e-9, false});
    cfg.full_mesh = true;
    // Triangle-safe link parameters: any two-hop detour is strictly slower.
    cfg.default_bandwidth_bytes_per_sec = 2.1e6 + u(rng) * 1.9e6;
    cfg.default_propagation_delay_sec = 0.001 + u(rng) * 0.0009;
    cfg.sources.push_back({"s", "A", "m", 0.5 + u(rng) * 10.0, 0.5 + u(rng) * 2.0, 1, 1, {}});
    cfg.algorithm = Algorithm::PaMdi;
    auto resolved = resolve_scenario(cfg);
    OracleInstance inst(resolved);
    const double age = u(rng) * 5.0;
    inst.set_task_age({"s", 1, 1}, age);
    std::vector<WorkerId> candidates;
    std::vector<CandidateStatus> cands;
    Task task = make_task(resolved.sources.at("s").spec, resolved.sources.at("s").plan,
                          *resolved.sources.at("s").model, 1, 1, -age);
    for (const auto& id : resolved.topology.worker_ids()) {
      const double backlog = u(rng) * 4.0;
      inst.set_backlog(id, backlog);
      candidates.push_back(id);
      double link = 0.0;
      if (id != "A") {
        link = transfer_delay(task.input_bytes, *resolved.topology.link_between("A", id));
      }
      cands.push_back({id, link, resolved.topology.profile(id).seconds_per_flop, backlog});
    }
    const auto decision =
        decide_offload(task, "A", cands, cfg.sources[0].priority_weight,
                       cfg.sources[0].accuracy_gain, 0.0);
    const auto oracle = per_task_ratio_minimizer(inst, {"s", 1, 1}, "A", candidates);
    CHECK(decision.chosen_worker == oracle);
    ++checked;
  }
  CHECK(checked == 150);
}

TEST_CASE("brute force exposes the per-point ratio minimizers") {
  auto cfg = small_instance(3, 1, 1);
  auto resolved = resolve_scenario(cfg);
  OracleInstance inst(resolved);
  const auto result = brute_force_optimal(inst, 1.0);
  REQUIRE(result.ratio_minimizers.size() == 1);
  const auto& chain = result.ratio_minimizers.at({"s", 1});
  REQUIRE(chain.size() == 1);
  // For a single task the chain-ratio minimizer is the per-task minimizer.
  CHECK(chain.front() == per_task_ratio_minimizer(inst, {"s", 1, 1}, "A", {"A", "B", "C"}));
}

TEST_CASE("beta zero with equal failure probabilities ties every assignment") {
  auto cfg = small_instance(3, 1, 2);
  cfg.failure_probs["A"] = 0.1;
  cfg.failure_probs["B"] = 0.1;
  cfg.failure_probs["C"] = 0.1;
  auto resolved = resolve_scenario(cfg);
  OracleInstance inst(resolved);
  const auto result = brute_force_optimal(inst, 0.0);
  // Accuracy term only: gamma * alpha * (1-p)^K, identical for all 9 chains.
  const double expect = 2.0 * 1.0 * 0.9 * 0.9;
  CHECK(result.best_objective == doctest::Approx(expect));
  PolicyAssignment other;
  other.assignment[{"s", 1, 1}] = "C";
  other.assignment[{"s", 1, 2}] = "B";
  CHECK(inst.objective(other, 0.0) == doctest::Approx(result.best_objective));
}
