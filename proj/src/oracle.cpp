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
#include "pamdi/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pamdi {

OracleInstance::OracleInstance(const ResolvedScenario& scenario) : scenario_(&scenario) {
  workers_ = scenario.topology.worker_ids();
  for (const auto& [sid, rs] : scenario.sources) {
    for (int d = 1; d <= rs.spec.num_data_points; ++d) {
      for (int k = 1; k <= rs.plan.partition_count(); ++k) {
        TaskKey key{sid, d, k};
        tasks_.push_back(key);
        task_props_[key] = {task_flops(rs.plan, *rs.model, k),
                            partition_input_bytes(rs.plan, *rs.model, k)};
      }
    }
  }
}

void OracleInstance::set_backlog(const WorkerId& worker, double seconds) {
  backlog_[worker] = seconds;
}

void OracleInstance::set_task_age(const TaskKey& key, double seconds) { age_[key] = seconds; }

double OracleInstance::failure_prob(const WorkerId& worker) const {
  auto it = scenario_->config.failure_probs.find(worker);
  return it == scenario_->config.failure_probs.end() ? 0.0 : it->second;
}

const SourceSpec& OracleInstance::source(const SourceId& id) const {
  return scenario_->sources.at(id).spec;
}

WorkerId OracleInstance::host_of(const SourceId& id) const {
  return scenario_->sources.at(id).spec.host_worker;
}

double OracleInstance::task_delay(const TaskKey& key, const WorkerId& worker,
                                  const WorkerId& prev_worker) const {
  const auto& [flops, input_bytes] = task_props_.at(key);
  auto comm = scenario_->topology.path_delay(prev_worker, worker, input_bytes);
  if (!comm) return std::numeric_limits<double>::infinity();
  double age = 0.0;
  if (auto it = age_.find(key); it != age_.end()) age = it->second;
  double backlog = 0.0;
  if (auto it = backlog_.find(worker); it != backlog_.end()) backlog = it->second;
  return *comm + age + flops * scenario_->topology.profile(worker).seconds_per_flop + backlog;
}

double OracleInstance::objective(const PolicyAssignment& assignment, double beta) const {
  double total = 0.0;
  for (const auto& [sid, rs] : scenario_->sources) {
    const SourceSpec& src = rs.spec;
    for (int d = 1; d <= src.num_data_points; ++d) {
      double success = 1.0;
      double delay_sum = 0.0;
      WorkerId prev = src.host_worker;
      for (int k = 1; k <= rs.plan.partition_count(); ++k) {
        TaskKey key{sid, d, k};
        auto it = assignment.assignment.find(key);
        if (it == assignment.assignment.end())
          throw std::invalid_argument("assignment misses task " + sid + "/" + std::to_string(d) +
                                      "/" + std::to_string(k));
        const WorkerId& w = it->second;
        success *= 1.0 - failure_prob(w);
        delay_sum += task_delay(key, w, prev);
        prev = w;
      }
      total += src.priority_weight * src.accuracy_gain * success - beta * delay_sum;
    }
  }
  return total;
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

// Objective contribution of one (m, d) chain under a per-chain assignment.
double point_term(const OracleInstance& inst, const SourceId& sid, int d,
                  const std::vector<WorkerId>& chain_assignment, double beta) {
  const SourceSpec& src = inst.source(sid);
  double success = 1.0;
  double delay_sum = 0.0;
  WorkerId prev = src.host_worker;
  for (size_t k = 0; k < chain_assignment.size(); ++k) {
    const WorkerId& w = chain_assignment[k];
    TaskKey key{sid, d, static_cast<int>(k) + 1};
    success *= 1.0 - inst.failure_prob(w);
    delay_sum += inst.task_delay(key, w, prev);
    prev = w;
  }
  return src.priority_weight * src.accuracy_gain * success - beta * delay_sum;
}

// Chain delay-to-priority ratio of one (m, d) under a per-chain assignment.
double point_ratio(const OracleInstance& inst, const SourceId& sid, int d,
                   const std::vector<WorkerId>& chain_assignment) {
  const SourceSpec& src = inst.source(sid);
  double success = 1.0;
  double delay_sum = 0.0;
  WorkerId prev = src.host_worker;
  for (size_t k = 0; k < chain_assignment.size(); ++k) {
    const WorkerId& w = chain_assignment[k];
    TaskKey key{sid, d, static_cast<int>(k) + 1};
    success *= 1.0 - inst.failure_prob(w);
    delay_sum += inst.task_delay(key, w, prev);
    prev = w;
  }
  const double denom = src.priority_weight * src.accuracy_gain * success;
  if (!(denom > 0)) return std::numeric_limits<double>::infinity();
  return delay_sum / denom;
}

// Exhaustive per-(m, d) search with a caller-supplied "is x better than y"
// ordering over (value, chain).
template <typename Score>
std::map<std::pair<SourceId, int>, std::vector<WorkerId>> per_point_search(
    const OracleInstance& instance, std::uint64_t cap, Score score, bool maximize) {
  const auto& workers = instance.workers();
  std::map<std::pair<SourceId, int>, int> chain_len;
  for (const auto& [m, d, k] : instance.tasks())
    chain_len[{m, d}] = std::max(chain_len[{m, d}], k);

  std::map<std::pair<SourceId, int>, std::vector<WorkerId>> out;
  for (const auto& [md, len] : chain_len) {
    const auto& [sid, d] = md;
    const std::uint64_t space = checked_pow(workers.size(), static_cast<std::uint64_t>(len), cap);
    if (space > cap) throw std::runtime_error("per-point enumeration exceeds cap");
    std::vector<size_t> odometer(static_cast<size_t>(len), 0);
    std::vector<WorkerId> chain(static_cast<size_t>(len));
    double best = 0.0;
    std::vector<WorkerId> best_chain;
    bool have_best = false;
    while (true) {
      for (size_t i = 0; i < chain.size(); ++i) chain[i] = workers[odometer[i]];
      const double value = score(sid, d, chain);
      if (!have_best || (maximize ? value > best : value < best)) {
        best = value;
        best_chain = chain;
        have_best = true;
      }
      size_t pos = chain.size();
      bool done = false;
      while (pos > 0) {
        --pos;
        if (++odometer[pos] < workers.size()) break;
        odometer[pos] = 0;
        if (pos == 0) done = true;
      }
      if (done) break;
    }
    out[md] = best_chain;
  }
  return out;
}

}  // namespace

BruteForceResult brute_force_optimal(const OracleInstance& instance, double beta,
                                     std::uint64_t cap) {
  const auto& tasks = instance.tasks();
  const auto& workers = instance.workers();
  if (workers.empty()) throw std::runtime_error("brute force: no workers");
  const std::uint64_t space = checked_pow(workers.size(), tasks.size(), cap);
  if (space > cap)
    throw std::runtime_error("brute force: |workers|^|tasks| exceeds cap of " +
                             std::to_string(cap));

  BruteForceResult result;
  std::vector<size_t> odometer(tasks.size(), 0);
  PolicyAssignment current;
  bool have_best = false;
  bool exhausted = false;
  while (!exhausted) {
    for (size_t i = 0; i < tasks.size(); ++i)
      current.assignment[tasks[i]] = workers[odometer[i]];
    const double j = instance.objective(current, beta);
    ++result.evaluated;
    if (!have_best || j > result.best_objective) {
      result.best_objective = j;
      result.best = current;
      have_best = true;
    }
    // Advance the odometer, last position fastest.
    size_t pos = tasks.size();
    exhausted = tasks.empty();
    while (pos > 0) {
      --pos;
      if (++odometer[pos] < workers.size()) break;
      odometer[pos] = 0;
      if (pos == 0) exhausted = true;
    }
  }
  result.ratio_minimizers = per_point_search(
      instance, cap,
      [&](const SourceId& sid, int d, const std::vector<WorkerId>& chain) {
        return point_ratio(instance, sid, d, chain);
      },
      /*maximize=*/false);
  return result;
}

PolicyAssignment per_point_optima(const OracleInstance& instance, double beta, std::uint64_t cap) {
  PolicyAssignment joined;
  const auto optima = per_point_search(
      instance, cap,
      [&](const SourceId& sid, int d, const std::vector<WorkerId>& chain) {
        return point_term(instance, sid, d, chain, beta);
      },
      /*maximize=*/true);
  for (const auto& [md, chain] : optima) {
    for (size_t k = 0; k < chain.size(); ++k)
      joined.assignment[{md.first, md.second, static_cast<int>(k) + 1}] = chain[k];
  }
  return joined;
}

WorkerId per_task_ratio_minimizer(const OracleInstance& instance, const TaskKey& key,
                                  const WorkerId& holder,
                                  const std::vector<WorkerId>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("no candidates");
  const auto& [sid, d, k] = key;
  const SourceSpec& src = instance.source(sid);
  WorkerId best;
  double best_ratio = std::numeric_limits<double>::infinity();
  bool have_best = false;
  for (const WorkerId& w : candidates) {
    const double denom =
        src.priority_weight * src.accuracy_gain * (1.0 - instance.failure_prob(w));
    if (!(denom > 0)) continue;
    const double ratio = instance.task_delay(key, w, holder) / denom;
    if (!have_best || ratio < best_ratio || (ratio == best_ratio && w < best)) {
      best_ratio = ratio;
      best = w;
      have_best = true;
    }
  }
  if (!have_best) throw std::runtime_error("no feasible candidate");
  return best;
}

}  // namespace pamdi
