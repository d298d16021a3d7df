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
#include <random>
#include <vector>

#include "pamdi/model.hpp"

namespace pamdi {

/// Poisson leave/return process over the mobile helper workers: a single
/// event clock with i.i.d. exponential inter-event gaps; each event toggles
/// one uniformly chosen mobile worker between present and away.
struct ChurnProcess {
  std::vector<WorkerId> mobile_workers;
  double mean_interval_sec = 50.0;
  std::uint64_t rng_seed = 0;
};

struct ChurnEvent {
  SimTime time = 0.0;
  WorkerId worker;
  bool leave = false;    // false = return
  double interval = 0.0; // the exponential draw that produced this event
};

// Draws from [0,1) with 53-bit resolution; identical across platforms for a
// given engine state.
double uniform_unit(std::mt19937_64& rng);
double sample_exponential(std::mt19937_64& rng, double mean);

// The full event schedule on [0, horizon]. Deterministic in (process, horizon).
std::vector<ChurnEvent> make_churn_schedule(const ChurnProcess& process, SimTime horizon);

}  // namespace pamdi
