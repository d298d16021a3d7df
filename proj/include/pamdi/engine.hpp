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

#include "pamdi/scenario.hpp"
#include "pamdi/trace.hpp"

namespace pamdi {

/// Engine event vocabulary. Protocol timers (status deadline, CTC deadline,
/// grant expiry) are StatusRefresh wake-ups with a payload subkind.
enum class EventKind { MessageDelivery, ComputeComplete, ChurnLeave, ChurnReturn, StatusRefresh };

// Runs the scenario to completion (all data points of every source produce a
// result and drain) or to max_sim_time (trace marked truncated). Identical
// (scenario, seed) inputs yield byte-identical traces.
SimulationTrace run_simulation(const ResolvedScenario& scenario);

}  // namespace pamdi
