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
#include <span>

#include "pamdi/model.hpp"

namespace pamdi {

/// Undirected link between two workers.
struct LinkSpec {
  WorkerId a;
  WorkerId b;
  double bandwidth_bytes_per_sec = 0.0;  // > 0
  double propagation_delay_sec = 0.0;    // >= 0
};

/// What a worker reports about itself in a status exchange.
struct StatusSnapshot {
  WorkerId worker_id;
  double seconds_per_flop = 0.0;
  double backlog_sec = 0.0;  // time to finish already-assigned work
  SimTime taken_at = 0.0;
};

inline double compute_delay(const Task& task, const WorkerProfile& profile) {
  return task.flops * profile.seconds_per_flop;
}

inline double transfer_delay(std::uint64_t bytes, const LinkSpec& link) {
  return link.propagation_delay_sec + static_cast<double>(bytes) / link.bandwidth_bytes_per_sec;
}

// Remaining time of the in-flight task plus the compute time of every queued
// task on this worker. Communication is deliberately excluded: this is what
// the worker can know locally.
double backlog_seconds(double inflight_remaining_sec, std::span<const Task> queued,
                       const WorkerProfile& profile);

}  // namespace pamdi
