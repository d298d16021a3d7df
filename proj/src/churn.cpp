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
#include "pamdi/churn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace pamdi {

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double sample_exponential(std::mt19937_64& rng, double mean) {
  // Inverse CDF; log1p keeps precision for small draws.
  return -mean * std::log1p(-uniform_unit(rng));
}

std::vector<ChurnEvent> make_churn_schedule(const ChurnProcess& process, SimTime horizon) {
  std::vector<ChurnEvent> events;
  if (process.mobile_workers.empty() || horizon <= 0.0) return events;
  if (process.mean_interval_sec <= 0.0)
    throw std::invalid_argument("churn mean_interval_sec must be > 0");

  std::vector<WorkerId> mobile = process.mobile_workers;
  std::sort(mobile.begin(), mobile.end());
  std::map<WorkerId, bool> away;
  for (const auto& w : mobile) away[w] = false;

  std::mt19937_64 rng(process.rng_seed);
  SimTime t = 0.0;
  while (true) {
    const double gap = sample_exponential(rng, process.mean_interval_sec);
    t += gap;
    if (t > horizon) break;
    const size_t pick = static_cast<size_t>(uniform_unit(rng) * static_cast<double>(mobile.size()));
    const WorkerId& w = mobile[std::min(pick, mobile.size() - 1)];
    const bool leave = !away[w];
    away[w] = leave;
    events.push_back({t, w, leave, gap});
  }
  return events;
}

}  // namespace pamdi
