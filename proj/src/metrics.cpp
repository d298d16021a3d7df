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
#include "pamdi/metrics.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace pamdi {

namespace {

// Per-data-point inference time: sum of (completed - created) over the
// point's task records.
std::map<int, double> per_point_times(const SimulationTrace& trace, const SourceId& source) {
  std::map<int, double> sums;
  for (const TaskRecord& rec : trace.tasks) {
    if (rec.source_id == source) sums[rec.data_index] += rec.completed_at - rec.created_at;
  }
  return sums;
}

const SourceSummary& summary_of(const SimulationTrace& trace, const SourceId& source) {
  auto sit = trace.sources.find(source);
  if (sit == trace.sources.end())
    throw std::runtime_error("trace has no source '" + source + "'");
  return sit->second;
}

}  // namespace

double average_inference_time(const SimulationTrace& trace, const SourceId& source) {
  const SourceSummary& summary = summary_of(trace, source);
  std::map<int, std::set<int>> seen_parts;
  for (const TaskRecord& rec : trace.tasks) {
    if (rec.source_id == source) seen_parts[rec.data_index].insert(rec.partition_index);
  }
  for (int d = 1; d <= summary.num_data_points; ++d) {
    auto it = seen_parts.find(d);
    if (it == seen_parts.end())
      throw std::runtime_error("trace incomplete for source '" + source + "': missing (d=" +
                               std::to_string(d) + ", k=1)");
    // Ring runs have a varying partition count (summary.partitions == 0);
    // for those, a recorded result is the completeness witness.
    for (int k = 1; k <= summary.partitions; ++k) {
      if (!it->second.count(k))
        throw std::runtime_error("trace incomplete for source '" + source + "': missing (d=" +
                                 std::to_string(d) + ", k=" + std::to_string(k) + ")");
    }
  }
  if (summary.results < summary.num_data_points)
    throw std::runtime_error("trace incomplete for source '" + source + "': " +
                             std::to_string(summary.results) + "/" +
                             std::to_string(summary.num_data_points) + " results");

  auto sums = per_point_times(trace, source);
  double total = 0.0;
  for (const auto& [d, t] : sums) total += t;
  return total / static_cast<double>(sums.size());
}

std::vector<SourceMetrics> per_source_metrics(const SimulationTrace& trace) {
  std::vector<SourceMetrics> out;
  for (const auto& [sid, summary] : trace.sources) {
    SourceMetrics m;
    m.source_id = sid;
    m.host = summary.host;
    m.data_points = summary.num_data_points;
    m.results = summary.results;
    // Averages cover only data points that finished (equals all of them on a
    // non-truncated run).
    std::set<int> finished;
    for (const ResultRecord& r : trace.results)
      if (r.source_id == sid) finished.insert(r.data_index);
    auto sums = per_point_times(trace, sid);
    double total = 0.0;
    int n = 0;
    m.min_inference_time_sec = std::numeric_limits<double>::infinity();
    m.max_inference_time_sec = 0.0;
    for (const auto& [d, t] : sums) {
      if (!finished.count(d)) continue;
      total += t;
      ++n;
      m.min_inference_time_sec = std::min(m.min_inference_time_sec, t);
      m.max_inference_time_sec = std::max(m.max_inference_time_sec, t);
    }
    if (n > 0) {
      m.avg_inference_time_sec = total / n;
    } else {
      m.min_inference_time_sec = 0.0;
    }
    auto times = result_times(trace, sid);
    if (!times.empty()) {
      m.first_result_at = times.front();
      m.last_result_at = times.back();
    }
    out.push_back(m);
  }
  return out;
}

std::vector<SimTime> result_times(const SimulationTrace& trace, const SourceId& source) {
  std::vector<std::pair<int, SimTime>> pairs;
  for (const ResultRecord& r : trace.results) {
    if (r.source_id == source) pairs.push_back({r.data_index, r.recorded_at});
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<SimTime> out;
  out.reserve(pairs.size());
  for (const auto& [d, t] : pairs) out.push_back(t);
  return out;
}

}  // namespace pamdi
