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
#include <tuple>
#include <vector>

#include "pamdi/scenario.hpp"

namespace pamdi {

using TaskKey = std::tuple<SourceId, int, int>;  // (m, d, k)

/// Total assignment of tasks to workers.
struct PolicyAssignment {
  std::map<TaskKey, WorkerId> assignment;
};

/// Static evaluation instance: every delay comes from the cost model, no
/// simulation. Backlogs, task ages, and per-worker failure probabilities are
/// optional analysis knobs (all default to zero).
class OracleInstance {
 public:
  explicit OracleInstance(const ResolvedScenario& scenario);

  // Enumeration order: (m, d, k) ascending, m lexicographic.
  const std::vector<TaskKey>& tasks() const { return tasks_; }
  const std::vector<WorkerId>& workers() const { return workers_; }

  void set_backlog(const WorkerId& worker, double seconds);
  void set_task_age(const TaskKey& key, double seconds);

  // Delay of running `key` on `worker` when the previous partition ran on
  // `prev_worker` (the source host for k = 1): multi-hop communication of the
  // task's input + its age + compute time + the worker's backlog. +inf when
  // the workers are disconnected.
  double task_delay(const TaskKey& key, const WorkerId& worker, const WorkerId& prev_worker) const;
  double failure_prob(const WorkerId& worker) const;
  const SourceSpec& source(const SourceId& id) const;
  WorkerId host_of(const SourceId& id) const;

  // Accuracy-minus-beta*delay objective of a total assignment.
  double objective(const PolicyAssignment& assignment, double beta) const;

 private:
  const ResolvedScenario* scenario_;
  std::vector<TaskKey> tasks_;
  std::vector<WorkerId> workers_;
  std::map<WorkerId, double> backlog_;
  std::map<TaskKey, double> age_;
  std::map<TaskKey, std::pair<double, std::uint64_t>> task_props_;  // flops, input_bytes
};

struct BruteForceResult {
  PolicyAssignment best;
  double best_objective = 0.0;
  std::uint64_t evaluated = 0;
  // Per-(m, d) minimizers of the chain delay-to-priority ratio
  //   sum_k delay / (gamma * alpha * prod_k (1 - P)),
  // the reduction the scheduler's per-task rule comes from; exposed for
  // cross-checking against the decomposition.
  std::map<std::pair<SourceId, int>, std::vector<WorkerId>> ratio_minimizers;
};

// Exhaustive argmax of the objective over workers^tasks. Throws
// std::runtime_error when the search space exceeds `cap`. Ties keep the
// first assignment in enumeration order (workers ascending, last task
// fastest-varying), so the result is deterministic.
BruteForceResult brute_force_optimal(const OracleInstance& instance, double beta,
                                     std::uint64_t cap = 1000000);

// Independent per-(m, d) exhaustive optima of the objective's (m, d) term;
// joining them must equal the global optimum (the objective has no cross
// terms).
PolicyAssignment per_point_optima(const OracleInstance& instance, double beta,
                                  std::uint64_t cap = 1000000);

// Minimizer of delay / (gamma * alpha * (1 - P)) for a single task fetched at
// `holder`, over the given candidate workers. This is the per-task reduction
// the online scheduler implements; the oracle recomputes it from the cost
// model for cross-checking. Ties go to the lowest worker id.
WorkerId per_task_ratio_minimizer(const OracleInstance& instance, const TaskKey& key,
                                  const WorkerId& holder, const std::vector<WorkerId>& candidates);

inline std::vector<double> default_beta_grid() { return {0.01, 0.1, 1.0, 10.0}; }

}  // namespace pamdi
