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
#include "pamdi/scheduler.hpp"

#include <stdexcept>
#include <tuple>

namespace pamdi {

bool TaskQueue::Cmp::operator()(const Entry& x, const Entry& y) const {
  // Highest priority weight first, then oldest, then stable id order.
  return std::tuple(-x.priority_weight, x.task.created_at, x.task.source_id, x.task.data_index,
                    x.task.partition_index) <
         std::tuple(-y.priority_weight, y.task.created_at, y.task.source_id, y.task.data_index,
                    y.task.partition_index);
}

void TaskQueue::insert(const Task& task, double priority_weight) {
  entries_.insert(Entry{task, priority_weight});
}

std::optional<Task> TaskQueue::fetch_next() {
  if (entries_.empty()) return std::nullopt;
  Task t = entries_.begin()->task;
  entries_.erase(entries_.begin());
  return t;
}

const Task* TaskQueue::peek() const {
  if (entries_.empty()) return nullptr;
  return &entries_.begin()->task;
}

double TaskQueue::queued_compute_seconds(const WorkerProfile& profile) const {
  double total = 0.0;
  for (const Entry& e : entries_) total += e.task.flops * profile.seconds_per_flop;
  return total;
}

std::vector<Task> TaskQueue::snapshot_tasks() const {
  std::vector<Task> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.push_back(e.task);
  return out;
}

OffloadDecision decide_offload(const Task& task, const WorkerId& self,
                               std::span<const CandidateStatus> candidates,
                               double priority_weight, double accuracy_gain, SimTime now) {
  if (candidates.empty()) throw std::invalid_argument("decide_offload: empty candidate set");
  if (priority_weight <= 0.0 || accuracy_gain <= 0.0)
    throw std::invalid_argument("decide_offload: priority_weight and accuracy_gain must be > 0");

  const double age = task.age(now);
  const double denom = priority_weight * accuracy_gain;
  OffloadDecision decision;
  bool have_best = false;
  bool saw_self = false;
  for (const CandidateStatus& c : candidates) {
    saw_self = saw_self || c.worker == self;
    const double score =
        (c.link_delay_sec + age + task.flops * c.seconds_per_flop + c.backlog_sec) / denom;
    decision.per_candidate_scores[c.worker] = score;
    if (!have_best || score < decision.score ||
        (score == decision.score && c.worker < decision.chosen_worker)) {
      decision.score = score;
      decision.chosen_worker = c.worker;
      have_best = true;
    }
  }
  if (!saw_self) throw std::invalid_argument("decide_offload: self must be a candidate");
  return decision;
}

}  // namespace pamdi
