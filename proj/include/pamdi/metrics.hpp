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
#include <string>
#include <vector>

#include "pamdi/trace.hpp"

namespace pamdi {

/// Mean over data points of the summed per-task (completion - creation)
/// durations for one source. Throws std::runtime_error naming the first
/// missing (d, k) when the trace is incomplete for that source.
double average_inference_time(const SimulationTrace& trace, const SourceId& source);

struct SourceMetrics {
  SourceId source_id;
  WorkerId host;
  int data_points = 0;
  int results = 0;
  double avg_inference_time_sec = 0.0;
  double min_inference_time_sec = 0.0;
  double max_inference_time_sec = 0.0;
  SimTime first_result_at = 0.0;
  SimTime last_result_at = 0.0;
};

std::vector<SourceMetrics> per_source_metrics(const SimulationTrace& trace);

// Result timestamps for one source in data-point order (for interval checks).
std::vector<SimTime> result_times(const SimulationTrace& trace, const SourceId& source);

}  // namespace pamdi
