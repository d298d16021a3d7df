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
#include <vector>

#include "pamdi/model.hpp"

namespace pamdi {

/// Circular processing order for one source's model, starting at its host.
struct RingChain {
  SourceId source_id;
  std::vector<WorkerId> order;
};

// Chain with `departed` removed; relinking is immediate (idealized recovery).
std::vector<WorkerId> bypass_departed(const std::vector<WorkerId>& chain,
                                      const WorkerId& departed);
// The members of `full_chain` that are currently present, in original order.
// A returning worker therefore reappears at its original position.
std::vector<WorkerId> active_chain(const std::vector<WorkerId>& full_chain,
                                   const std::map<WorkerId, bool>& present);

// Layer allocation across chain positions. Both return one Cut per position
// covering 1..layer_count; every position gets at least one layer.
// Uniform: counts differ by at most one, earlier positions take the extra.
std::vector<Cut> allocate_layers_uniform(int layer_count, int positions);
// Speed-proportional: cumulative flops split in proportion to each
// position's compute rate (1 / seconds_per_flop).
std::vector<Cut> allocate_layers_by_speed(const ModelSpec& model,
                                          const std::vector<double>& seconds_per_flop);

// Position (0-based) whose cut contains `layer`.
int position_owning_layer(const std::vector<Cut>& alloc, int layer);

}  // namespace pamdi
