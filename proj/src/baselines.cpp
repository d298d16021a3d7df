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
#include "pamdi/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace pamdi {

std::vector<WorkerId> bypass_departed(const std::vector<WorkerId>& chain,
                                      const WorkerId& departed) {
  std::vector<WorkerId> out;
  out.reserve(chain.size());
  for (const auto& w : chain)
    if (w != departed) out.push_back(w);
  return out;
}

std::vector<WorkerId> active_chain(const std::vector<WorkerId>& full_chain,
                                   const std::map<WorkerId, bool>& present) {
  std::vector<WorkerId> out;
  out.reserve(full_chain.size());
  for (const auto& w : full_chain) {
    auto it = present.find(w);
    if (it != present.end() && it->second) out.push_back(w);
  }
  return out;
}

std::vector<Cut> allocate_layers_uniform(int layer_count, int positions) {
  if (positions < 1) throw std::invalid_argument("allocate_layers_uniform: no positions");
  if (layer_count < positions)
    throw std::invalid_argument("allocate_layers_uniform: fewer layers than positions");
  std::vector<Cut> cuts;
  const int base = layer_count / positions;
  const int extra = layer_count % positions;
  int begin = 1;
  for (int i = 0; i < positions; ++i) {
    const int len = base + (i < extra ? 1 : 0);
    cuts.push_back({begin, begin + len - 1});
    begin += len;
  }
  return cuts;
}

std::vector<Cut> allocate_layers_by_speed(const ModelSpec& model,
                                          const std::vector<double>& seconds_per_flop) {
  const int positions = static_cast<int>(seconds_per_flop.size());
  const int layer_count = model.layer_count();
  if (positions < 1) throw std::invalid_argument("allocate_layers_by_speed: no positions");
  if (layer_count < positions)
    throw std::invalid_argument("allocate_layers_by_speed: fewer layers than positions");

  double total_rate = 0.0;
  for (double spf : seconds_per_flop) {
    if (!(spf > 0)) throw std::invalid_argument("allocate_layers_by_speed: seconds_per_flop <= 0");
    total_rate += 1.0 / spf;
  }
  const double total_flops = model.total_flops();

  std::vector<Cut> cuts;
  cuts.reserve(positions);
  double cum_share = 0.0;
  double cum_flops = 0.0;
  int next_layer = 1;
  for (int i = 0; i < positions; ++i) {
    cum_share += (1.0 / seconds_per_flop[static_cast<size_t>(i)]) / total_rate;
    const double target = total_flops * cum_share;
    int end = next_layer;  // at least one layer per position
    cum_flops += model.layers[static_cast<size_t>(end - 1)].flops;
    // Keep the tail positions feasible: leave one layer for each of them.
    const int max_end = layer_count - (positions - 1 - i);
    while (end < max_end) {
      // Take the next layer only if it lands strictly closer to the target.
      const double next_flops = model.layers[static_cast<size_t>(end)].flops;
      if (std::abs(cum_flops + next_flops - target) >= std::abs(cum_flops - target)) break;
      ++end;
      cum_flops += next_flops;
    }
    if (i == positions - 1) end = layer_count;
    cuts.push_back({next_layer, end});
    next_layer = end + 1;
  }
  return cuts;
}

int position_owning_layer(const std::vector<Cut>& alloc, int layer) {
  for (size_t i = 0; i < alloc.size(); ++i) {
    if (layer >= alloc[i].begin_layer && layer <= alloc[i].end_layer) return static_cast<int>(i);
  }
  throw std::out_of_range("no position owns layer " + std::to_string(layer));
}

}  // namespace pamdi
