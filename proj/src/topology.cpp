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
#include "pamdi/topology.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

#include "pamdi/cost.hpp"

namespace pamdi {

void Topology::add_worker(const WorkerProfile& profile) {
  if (workers_.count(profile.worker_id))
    throw std::invalid_argument("duplicate worker id " + profile.worker_id);
  workers_[profile.worker_id] = profile;
  present_[profile.worker_id] = true;
  incident_[profile.worker_id];
}

void Topology::add_link(const LinkSpec& link) {
  if (link.a == link.b) throw std::invalid_argument("self-link at " + link.a);
  if (!has_worker(link.a) || !has_worker(link.b))
    throw std::invalid_argument("link references unknown worker " + link.a + "-" + link.b);
  if (link_between(link.a, link.b))
    throw std::invalid_argument("duplicate link " + link.a + "-" + link.b);
  const int idx = static_cast<int>(links_.size());
  links_.push_back(link);
  incident_[link.a].push_back(idx);
  incident_[link.b].push_back(idx);
}

const WorkerProfile& Topology::profile(const WorkerId& id) const {
  auto it = workers_.find(id);
  if (it == workers_.end()) throw std::out_of_range("unknown worker " + id);
  return it->second;
}

WorkerProfile& Topology::profile(const WorkerId& id) {
  auto it = workers_.find(id);
  if (it == workers_.end()) throw std::out_of_range("unknown worker " + id);
  return it->second;
}

bool Topology::present(const WorkerId& id) const {
  auto it = present_.find(id);
  return it != present_.end() && it->second;
}

void Topology::set_present(const WorkerId& id, bool present) {
  if (!has_worker(id)) throw std::out_of_range("unknown worker " + id);
  present_[id] = present;
}

std::vector<WorkerId> Topology::worker_ids() const {
  std::vector<WorkerId> ids;
  ids.reserve(workers_.size());
  for (const auto& [id, _] : workers_) ids.push_back(id);
  return ids;
}

std::vector<WorkerId> Topology::neighbors(const WorkerId& id) const {
  std::vector<WorkerId> out;
  if (!present(id)) return out;
  auto it = incident_.find(id);
  if (it == incident_.end()) return out;
  for (int idx : it->second) {
    const LinkSpec& l = links_[static_cast<size_t>(idx)];
    const WorkerId& other = (l.a == id) ? l.b : l.a;
    if (present(other)) out.push_back(other);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const LinkSpec* Topology::link_between(const WorkerId& a, const WorkerId& b) const {
  auto it = incident_.find(a);
  if (it == incident_.end()) return nullptr;
  for (int idx : it->second) {
    const LinkSpec& l = links_[static_cast<size_t>(idx)];
    if ((l.a == a && l.b == b) || (l.a == b && l.b == a)) return &l;
  }
  return nullptr;
}

std::optional<std::vector<WorkerId>> Topology::shortest_path(const WorkerId& from,
                                                             const WorkerId& to,
                                                             std::uint64_t bytes) const {
  if (!has_worker(from) || !has_worker(to)) throw std::out_of_range("unknown worker in path query");
  if (!present(from) || !present(to)) return std::nullopt;
  if (from == to) return std::vector<WorkerId>{from};

  // Dijkstra over present workers; (distance, node id) keys keep expansion
  // order deterministic.
  std::map<WorkerId, double> dist;
  std::map<WorkerId, WorkerId> prev;
  using QEntry = std::pair<double, WorkerId>;
  std::priority_queue<QEntry, std::vector<QEntry>, std::greater<>> frontier;
  dist[from] = 0.0;
  frontier.push({0.0, from});
  while (!frontier.empty()) {
    auto [d, u] = frontier.top();
    frontier.pop();
    if (d > dist[u]) continue;
    if (u == to) break;
    auto inc = incident_.find(u);
    if (inc == incident_.end()) continue;
    for (int idx : inc->second) {
      const LinkSpec& l = links_[static_cast<size_t>(idx)];
      const WorkerId& v = (l.a == u) ? l.b : l.a;
      if (!present(v)) continue;
      const double nd = d + transfer_delay(bytes, l);
      auto it = dist.find(v);
      if (it == dist.end() || nd < it->second ||
          (nd == it->second && prev.count(v) && u < prev.at(v))) {
        dist[v] = nd;
        prev[v] = u;
        frontier.push({nd, v});
      }
    }
  }
  if (!dist.count(to)) return std::nullopt;
  std::vector<WorkerId> path{to};
  WorkerId cur = to;
  while (cur != from) {
    cur = prev.at(cur);
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<double> Topology::path_delay(const WorkerId& from, const WorkerId& to,
                                           std::uint64_t bytes) const {
  auto path = shortest_path(from, to, bytes);
  if (!path) return std::nullopt;
  double total = 0.0;
  for (size_t i = 0; i + 1 < path->size(); ++i) {
    const LinkSpec* l = link_between((*path)[i], (*path)[i + 1]);
    total += transfer_delay(bytes, *l);
  }
  return total;
}

}  // namespace pamdi
