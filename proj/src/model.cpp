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
#include "pamdi/model.hpp"

#include <stdexcept>
#include <string>

namespace pamdi {

double ModelSpec::total_flops() const {
  double sum = 0.0;
  for (const auto& l : layers) sum += l.flops;
  return sum;
}

std::vector<Cut> uniform_cuts(int layer_count, int parts) {
  if (parts < 1) throw std::invalid_argument("uniform_cuts: parts must be >= 1");
  if (layer_count < parts)
    throw std::invalid_argument("uniform_cuts: more parts than layers (" +
                                std::to_string(parts) + " > " + std::to_string(layer_count) + ")");
  std::vector<Cut> cuts;
  cuts.reserve(parts);
  const int base = layer_count / parts;
  const int extra = layer_count % parts;  // earlier cuts absorb the remainder
  int begin = 1;
  for (int i = 0; i < parts; ++i) {
    const int len = base + (i < extra ? 1 : 0);
    cuts.push_back({begin, begin + len - 1});
    begin += len;
  }
  return cuts;
}

PartitionPlan uniform_partition(const ModelSpec& model, int parts) {
  PartitionPlan plan;
  plan.model_id = model.model_id;
  plan.cuts = uniform_cuts(model.layer_count(), parts);
  return plan;
}

namespace {
const Cut& cut_at(const PartitionPlan& plan, int k) {
  if (k < 1 || k > plan.partition_count())
    throw std::out_of_range("partition index " + std::to_string(k) + " outside 1.." +
                            std::to_string(plan.partition_count()));
  return plan.cuts[static_cast<size_t>(k - 1)];
}
}  // namespace

double task_flops(const PartitionPlan& plan, const ModelSpec& model, int k) {
  const Cut& c = cut_at(plan, k);
  double sum = 0.0;
  for (int l = c.begin_layer; l <= c.end_layer; ++l)
    sum += model.layers[static_cast<size_t>(l - 1)].flops;
  return sum;
}

std::uint64_t partition_input_bytes(const PartitionPlan& plan, const ModelSpec& model, int k) {
  const Cut& c = cut_at(plan, k);
  if (c.begin_layer == 1) return model.input_size_bytes;
  return model.layers[static_cast<size_t>(c.begin_layer - 2)].output_bytes;
}

std::uint64_t partition_output_bytes(const PartitionPlan& plan, const ModelSpec& model, int k) {
  const Cut& c = cut_at(plan, k);
  if (c.end_layer == model.layer_count()) return model.output_size_bytes;
  return model.layers[static_cast<size_t>(c.end_layer - 1)].output_bytes;
}

Task make_task(const SourceSpec& source, const PartitionPlan& plan, const ModelSpec& model,
               int partition_index, int data_index, SimTime created_at) {
  Task t;
  t.source_id = source.source_id;
  t.partition_index = partition_index;
  t.data_index = data_index;
  t.created_at = created_at;
  t.flops = task_flops(plan, model, partition_index);
  t.input_bytes = partition_input_bytes(plan, model, partition_index);
  t.output_bytes = partition_output_bytes(plan, model, partition_index);
  return t;
}

}  // namespace pamdi
