/*
 * Copyright 2026 The gridteam Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "gridteam/grid/energization.hpp"

#include <algorithm>
#include <deque>

namespace gridteam::grid {

namespace {

std::vector<bool> closed_mask(const Topology& topology, const SwitchStates& states) {
  std::vector<bool> closed(topology.switches().size());
  for (std::size_t i = 0; i < closed.size(); ++i) {
    closed[i] = states.at(topology.switches()[i].id) == Position::Closed;
  }
  return closed;
}

}  // namespace

Energization energization(const Topology& topology, const SwitchStates& states) {
  const auto closed = closed_mask(topology, states);
  const std::size_t n = topology.segments().size();
  Energization e;
  e.segment_source.assign(n, std::nullopt);

  std::vector<std::size_t> visited_by(n, Topology::npos);
  for (std::size_t s = 0; s < topology.sources().size(); ++s) {
    const std::size_t bus = topology.segment_index(topology.sources()[s].segment);
    std::deque<std::size_t> queue{bus};
    visited_by[bus] = s;
    while (!queue.empty()) {
      const std::size_t seg = queue.front();
      queue.pop_front();
      if (!e.segment_source[seg]) {
        e.segment_source[seg] = s;
      } else if (*e.segment_source[seg] != s) {
        e.radial = false;
      }
      for (std::size_t sw : topology.incident(seg)) {
        if (!closed[sw]) continue;
        const std::size_t next = topology.far_end(sw, seg);
        if (visited_by[next] == s) continue;
        visited_by[next] = s;
        queue.push_back(next);
      }
    }
  }

  for (const auto& load : topology.loads()) {
    const auto src = e.segment_source[topology.segment_index(load.segment)];
    e.load_source[load.id] = src ? std::optional<std::string>(topology.sources()[*src].id) : std::nullopt;
  }
  return e;
}

std::map<std::string, std::int64_t> served_demand(const Topology& topology, const Energization& e) {
  std::map<std::string, std::int64_t> out;
  for (const auto& src : topology.sources()) out[src.id] = 0;
  for (const auto& load : topology.loads()) {
    const auto& fed = e.load_source.at(load.id);
    if (fed) out[*fed] += load.demand_kw;
  }
  return out;
}

std::vector<std::string> feed_path(const Topology& topology, const SwitchStates& states,
                                   std::size_t segment) {
  const auto closed = closed_mask(topology, states);
  const std::size_t n = topology.segments().size();
  std::vector<std::size_t> via(n, Topology::npos);
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue;
  for (const auto& src : topology.sources()) {
    const std::size_t bus = topology.segment_index(src.segment);
    if (!seen[bus]) {
      seen[bus] = true;
      queue.push_back(bus);
    }
  }
  while (!queue.empty()) {
    const std::size_t seg = queue.front();
    queue.pop_front();
    for (std::size_t sw : topology.incident(seg)) {
      if (!closed[sw]) continue;
      const std::size_t next = topology.far_end(sw, seg);
      if (seen[next]) continue;
      seen[next] = true;
      via[next] = sw;
      queue.push_back(next);
    }
  }
  std::vector<std::string> path;
  if (!seen[segment]) return path;
  for (std::size_t seg = segment; via[seg] != Topology::npos;) {
    const std::size_t sw = via[seg];
    path.push_back(topology.switches()[sw].id);
    seg = topology.far_end(sw, seg);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace gridteam::grid
