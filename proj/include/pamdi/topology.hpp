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
#include <optional>
#include <vector>

#include "pamdi/cost.hpp"
#include "pamdi/model.hpp"

namespace pamdi {

/// Graph of workers and links. Presence tracks churn: an absent worker drops
/// out of every adjacency set but keeps its profile and links for later.
class Topology {
 public:
  void add_worker(const WorkerProfile& profile);
  void add_link(const LinkSpec& link);  // throws on self-link or unknown endpoint

  bool has_worker(const WorkerId& id) const { return workers_.count(id) > 0; }
  const WorkerProfile& profile(const WorkerId& id) const;
  WorkerProfile& profile(const WorkerId& id);

  bool present(const WorkerId& id) const;
  void set_present(const WorkerId& id, bool present);

  // All workers, present or not, sorted by id.
  std::vector<WorkerId> worker_ids() const;
  // Present one-hop neighbors of `id`, sorted by id. Empty if `id` is absent.
  std::vector<WorkerId> neighbors(const WorkerId& id) const;
  // The link between a and b regardless of presence; nullptr if none.
  const LinkSpec* link_between(const WorkerId& a, const WorkerId& b) const;
  const std::vector<LinkSpec>& links() const { return links_; }

  // Minimum over paths (present workers only) of the summed per-hop
  // transfer_delay for this payload. 0 when from == to. nullopt when the
  // two workers are not connected.
  std::optional<double> path_delay(const WorkerId& from, const WorkerId& to,
                                   std::uint64_t bytes) const;
  // The path realizing path_delay (from and to included). Ties broken toward
  // lexicographically smaller predecessor ids, so routing is deterministic.
  std::optional<std::vector<WorkerId>> shortest_path(const WorkerId& from, const WorkerId& to,
                                                     std::uint64_t bytes) const;

 private:
  std::map<WorkerId, WorkerProfile> workers_;
  std::map<WorkerId, bool> present_;
  std::vector<LinkSpec> links_;
  std::map<WorkerId, std::vector<int>> incident_;  // worker -> indices into links_
};

}  // namespace pamdi
