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
#include <string>
#include <vector>

namespace pamdi {

using WorkerId = std::string;
using SourceId = std::string;
using SimTime = double;  // seconds

/// One computational unit of a model (a block in the partitioning sense).
struct LayerSpec {
  int layer_index = 0;               // 1-based, contiguous
  double flops = 0.0;                // floating point ops to process one data point
  std::uint64_t output_bytes = 0;    // size of the feature vector this layer emits
};

struct ModelSpec {
  std::string model_id;
  std::vector<LayerSpec> layers;
  std::uint64_t input_size_bytes = 0;   // raw input fed to layer 1
  std::uint64_t output_size_bytes = 0;  // final output returned to the source

  int layer_count() const { return static_cast<int>(layers.size()); }
  double total_flops() const;
};

/// Contiguous layer range [begin_layer, end_layer], 1-based inclusive.
struct Cut {
  int begin_layer = 0;
  int end_layer = 0;
};

struct PartitionPlan {
  std::string model_id;
  std::vector<Cut> cuts;  // cover 1..L exactly, in order

  int partition_count() const { return static_cast<int>(cuts.size()); }
};

// Splits layer indices 1..layer_count into `parts` contiguous cuts whose
// sizes differ by at most one; earlier cuts take the extra layer
// (23 layers, 2 parts -> 12 and 11).
PartitionPlan uniform_partition(const ModelSpec& model, int parts);
std::vector<Cut> uniform_cuts(int layer_count, int parts);

// Total flops of partition k (1-based). Throws std::out_of_range on bad k.
double task_flops(const PartitionPlan& plan, const ModelSpec& model, int k);

// Bytes entering partition k: the raw input for k=1, otherwise the output of
// the last layer of partition k-1.
std::uint64_t partition_input_bytes(const PartitionPlan& plan, const ModelSpec& model, int k);

// Bytes leaving partition k: the output of its last layer, except the final
// partition, which emits the model's output vector.
std::uint64_t partition_output_bytes(const PartitionPlan& plan, const ModelSpec& model, int k);

struct SourceSpec {
  SourceId source_id;
  WorkerId host_worker;
  std::string model_id;
  double priority_weight = 1.0;  // gamma, > 0, larger = more urgent
  double accuracy_gain = 1.0;    // alpha, > 0, uniform across data points
  int num_data_points = 1;       // D
};

/// Processing partition `partition_index` of `source_id`'s model for data
/// point `data_index`.
struct Task {
  SourceId source_id;
  int partition_index = 1;  // k, 1-based
  int data_index = 1;       // d, 1-based
  SimTime created_at = 0.0;
  double flops = 0.0;
  std::uint64_t input_bytes = 0;
  std::uint64_t output_bytes = 0;

  double age(SimTime now) const { return now - created_at; }
};

// Builds the task for (source, k, d); flops/bytes come from plan + model.
Task make_task(const SourceSpec& source, const PartitionPlan& plan, const ModelSpec& model,
               int partition_index, int data_index, SimTime created_at);

struct WorkerProfile {
  WorkerId worker_id;
  double seconds_per_flop = 0.0;  // inverse compute rate; > 0
  bool is_source_host = false;
  bool mobile = false;
};

}  // namespace pamdi
