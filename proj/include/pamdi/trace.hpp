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
#include <string>
#include <vector>

#include "pamdi/model.hpp"

namespace pamdi {

/// Lifecycle of one processed task.
struct TaskRecord {
  SourceId source_id;
  int data_index = 0;
  int partition_index = 0;
  SimTime created_at = 0.0;
  SimTime completed_at = 0.0;
  WorkerId processed_by;
};

struct ResultRecord {
  SourceId source_id;
  int data_index = 0;
  SimTime recorded_at = 0.0;
};

// Audit records for the protocol-safety checks.
struct GrantRecord {
  SimTime granted_at = 0.0;
  SimTime cleared_at = -1.0;  // -1 while outstanding
  WorkerId granter;
  WorkerId grantee;
  std::string cleared_by;  // "transfer", "expired", "leave"
};

struct SourceSummary {
  SourceId source_id;
  WorkerId host;
  int num_data_points = 0;
  int partitions = 0;  // 0 when the partition count varies (ring baselines)
  int admitted = 0;
  int results = 0;
};

/// Everything a run emits. `lines` is the external line-per-record format:
/// fixed-precision time, record kind, then kind-specific fields, space
/// separated in a stable order. Byte-identical across reruns of the same
/// (scenario, seed).
struct SimulationTrace {
  std::vector<std::string> lines;
  std::vector<TaskRecord> tasks;
  std::vector<ResultRecord> results;
  std::vector<GrantRecord> grants;
  std::map<SourceId, SourceSummary> sources;
  std::map<std::string, std::int64_t> counters;  // e.g. "msg_send.RTC"
  std::vector<double> churn_intervals;  // drawn gaps of the generated schedule
  int churn_events_occurred = 0;
  SimTime end_time = 0.0;
  bool truncated = false;
  bool deadlocked = false;

  std::string text() const;  // all lines, newline separated
};

std::string format_time(SimTime t);

}  // namespace pamdi
