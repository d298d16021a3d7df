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

#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "pamdi/model.hpp"

namespace pamdi {

/// Per-worker held-task set with the fetch order the scheduler needs:
/// highest priority weight first, then oldest (smallest created_at), then
/// (source_id, data_index, partition_index) ascending.
class TaskQueue {
 public:
  struct Entry {
    Task task;
    double priority_weight = 1.0;
  };

  void insert(const Task& task, double priority_weight);
  std::optional<Task> fetch_next();       // pops the front of the order
  const Task* peek() const;               // nullptr when empty
  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }
  // Compute-time backlog of everything held, for a worker with this profile.
  double queued_compute_seconds(const WorkerProfile& profile) const;
  std::vector<Task> snapshot_tasks() const;

 private:
  struct Cmp {
    bool operator()(const Entry& x, const Entry& y) const;
  };
  std::set<Entry, Cmp> entries_;
};

/// One candidate in the offload decision: the one-hop communication delay to
/// it, and its last reported status.
struct CandidateStatus {
  WorkerId worker;
  double link_delay_sec = 0.0;  // 0 for self
  double seconds_per_flop = 0.0;
  double backlog_sec = 0.0;
};

struct OffloadDecision {
  WorkerId chosen_worker;
  double score = 0.0;
  std::map<WorkerId, double> per_candidate_scores;
};

// Scores every candidate j with
//   (link_delay_j + task_age + task_flops * seconds_per_flop_j + backlog_j)
//     / (priority_weight * accuracy_gain)
// and picks the argmin; exact ties go to the lowest worker id. Throws
// std::invalid_argument on an empty candidate set.
OffloadDecision decide_offload(const Task& task, const WorkerId& self,
                               std::span<const CandidateStatus> candidates,
                               double priority_weight, double accuracy_gain, SimTime now);

}  // namespace pamdi
