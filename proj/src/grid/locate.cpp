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

#include "gridteam/grid/locate.hpp"

#include <deque>
#include <vector>

namespace gridteam::grid {

std::optional<FaultSegment> locate_segment(const Topology& topology, const DetectionSnapshot& snapshot) {
  const auto& tree = topology.normal_tree();
  std::vector<std::size_t> detecting;
  for (const auto& [id, det] : snapshot) {
    const std::size_t sw = topology.switch_index(id);
    if (!det.detected) continue;
    if (tree.switch_downstream[sw] == Topology::npos) {
      throw ContradictoryDetections("switch '" + id + "' reports fault current but is normally open");
    }
    detecting.push_back(sw);
  }
  if (detecting.empty()) return std::nullopt;

  std::size_t farthest = detecting.front();
  for (std::size_t sw : detecting) {
    const auto d = tree.segment_depth[tree.switch_downstream[sw]];
    const auto best = tree.segment_depth[tree.switch_downstream[farthest]];
    if (d > best) farthest = sw;
  }

  // Every detecting switch must sit on the source path of the farthest one,
  // and no known switch on that path may be silent.
  std::vector<bool> on_path(topology.switches().size(), false);
  for (std::size_t seg = tree.switch_downstream[farthest]; tree.parent_switch[seg] != Topology::npos;) {
    const std::size_t sw = tree.parent_switch[seg];
    on_path[sw] = true;
    const auto it = snapshot.find(topology.switches()[sw].id);
    if (it != snapshot.end() && !it->second.detected) {
      throw ContradictoryDetections("switch '" + topology.switches()[farthest].id +
                                    "' detects fault current downstream of silent switch '" +
                                    topology.switches()[sw].id + "'");
    }
    seg = tree.switch_upstream[sw];
  }
  for (std::size_t sw : detecting) {
    if (!on_path[sw]) {
      throw ContradictoryDetections("switches '" + topology.switches()[sw].id + "' and '" +
                                    topology.switches()[farthest].id +
                                    "' both detect fault current on different branches");
    }
  }

  FaultSegment fault{topology.switches()[farthest].id, {}};
  std::deque<std::size_t> queue{tree.switch_downstream[farthest]};
  while (!queue.empty()) {
    const std::size_t seg = queue.front();
    queue.pop_front();
    for (std::size_t sw : topology.incident(seg)) {
      if (tree.switch_upstream[sw] != seg) continue;
      const auto it = snapshot.find(topology.switches()[sw].id);
      if (it == snapshot.end()) {
        queue.push_back(tree.switch_downstream[sw]);
      } else {
        fault.downstream.insert(it->first);
      }
    }
  }
  return fault;
}

std::set<std::string> fault_region(const Topology& topology, const FaultSegment& fault) {
  const auto& tree = topology.normal_tree();
  const std::size_t up = topology.switch_index(fault.upstream);
  std::set<std::string> region;
  if (tree.switch_downstream[up] == Topology::npos) return region;
  std::deque<std::size_t> queue{tree.switch_downstream[up]};
  while (!queue.empty()) {
    const std::size_t seg = queue.front();
    queue.pop_front();
    region.insert(topology.segments()[seg].id);
    for (std::size_t sw : topology.incident(seg)) {
      if (tree.switch_upstream[sw] != seg) continue;
      if (fault.downstream.contains(topology.switches()[sw].id)) continue;
      queue.push_back(tree.switch_downstream[sw]);
    }
  }
  return region;
}

}  // namespace gridteam::grid
