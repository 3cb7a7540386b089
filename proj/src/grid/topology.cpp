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

#include "gridteam/grid/topology.hpp"

#include <deque>
#include <set>

#include "gridteam/grid/energization.hpp"

namespace gridteam::grid {

std::string_view to_string(SwitchKind kind) {
  switch (kind) {
    case SwitchKind::CB: return "CB";
    case SwitchKind::ROS: return "ROS";
    case SwitchKind::TIE: return "TIE";
  }
  return "?";
}

std::string_view to_string(Position position) {
  return position == Position::Open ? "Open" : "Closed";
}

std::optional<SwitchKind> parse_switch_kind(std::string_view text) {
  if (text == "CB") return SwitchKind::CB;
  if (text == "ROS") return SwitchKind::ROS;
  if (text == "TIE") return SwitchKind::TIE;
  return std::nullopt;
}

std::optional<Position> parse_position(std::string_view text) {
  if (text == "Open") return Position::Open;
  if (text == "Closed" || text == "Close") return Position::Closed;
  return std::nullopt;
}

namespace {

template <typename Map>
std::size_t lookup(const Map& ids, std::string_view id, std::string_view what) {
  auto it = ids.find(id);
  if (it == ids.end()) {
    throw TopologyError("unknown " + std::string(what) + " '" + std::string(id) + "'");
  }
  return it->second;
}

template <typename Map>
void index_ids(Map& ids, std::string_view what, const std::string& id, std::size_t i) {
  if (id.empty()) throw TopologyError(std::string(what) + " with empty id");
  if (!ids.emplace(id, i).second) {
    throw TopologyError("duplicate " + std::string(what) + " '" + id + "'");
  }
}

}  // namespace

Topology::Topology(std::vector<ZoneSubstation> sources, std::vector<Segment> segments,
                   std::vector<SwitchingUnit> switches, std::vector<Load> loads, RouteTable routes)
    : sources_(std::move(sources)),
      segments_(std::move(segments)),
      switches_(std::move(switches)),
      loads_(std::move(loads)),
      routes_(std::move(routes)) {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    index_ids(segment_ids_, "segment", segments_[i].id, i);
    segments_[i].loads.clear();
  }
  for (std::size_t i = 0; i < sources_.size(); ++i) {
    index_ids(source_ids_, "source", sources_[i].id, i);
    lookup(segment_ids_, sources_[i].segment, "segment");
  }
  incident_.resize(segments_.size());
  for (std::size_t i = 0; i < switches_.size(); ++i) {
    index_ids(switch_ids_, "switch", switches_[i].id, i);
    const std::size_t a = lookup(segment_ids_, switches_[i].ends[0], "segment");
    const std::size_t b = lookup(segment_ids_, switches_[i].ends[1], "segment");
    ends_.push_back({a, b});
    incident_[a].push_back(i);
    if (b != a) incident_[b].push_back(i);
  }
  for (std::size_t i = 0; i < loads_.size(); ++i) {
    index_ids(load_ids_, "load", loads_[i].id, i);
    segments_[lookup(segment_ids_, loads_[i].segment, "segment")].loads.push_back(loads_[i].id);
  }
  for (const auto& [load_id, list] : routes_) {
    lookup(load_ids_, load_id, "load");
    for (const auto& route : list) {
      lookup(source_ids_, route.source, "source");
      for (const auto& sw : route.path) lookup(switch_ids_, sw, "switch");
    }
  }
  build_tree();
}

std::size_t Topology::switch_index(std::string_view id) const {
  auto it = switch_ids_.find(id);
  if (it == switch_ids_.end()) throw UnknownSwitch(id);
  return it->second;
}

std::size_t Topology::segment_index(std::string_view id) const {
  auto it = segment_ids_.find(id);
  if (it == segment_ids_.end()) throw UnknownSegment(id);
  return it->second;
}

std::size_t Topology::load_index(std::string_view id) const {
  auto it = load_ids_.find(id);
  if (it == load_ids_.end()) throw UnknownLoad(id);
  return it->second;
}

std::size_t Topology::source_index(std::string_view id) const {
  return lookup(source_ids_, id, "source");
}

std::size_t Topology::far_end(std::size_t sw, std::size_t segment) const {
  return ends_[sw][0] == segment ? ends_[sw][1] : ends_[sw][0];
}

std::optional<std::size_t> Topology::source_at(std::size_t segment) const {
  for (std::size_t s = 0; s < sources_.size(); ++s) {
    if (segment_ids_.find(sources_[s].segment)->second == segment) return s;
  }
  return std::nullopt;
}

void Topology::build_tree() {
  const std::size_t n = segments_.size();
  tree_.segment_source.assign(n, std::nullopt);
  tree_.segment_depth.assign(n, 0);
  tree_.parent_switch.assign(n, npos);
  tree_.switch_upstream.assign(switches_.size(), npos);
  tree_.switch_downstream.assign(switches_.size(), npos);

  for (std::size_t s = 0; s < sources_.size(); ++s) {
    const std::size_t bus = segment_index(sources_[s].segment);
    if (tree_.segment_source[bus]) continue;
    tree_.segment_source[bus] = s;
    std::deque<std::size_t> queue{bus};
    while (!queue.empty()) {
      const std::size_t seg = queue.front();
      queue.pop_front();
      for (std::size_t sw : incident_[seg]) {
        if (switches_[sw].normal != Position::Closed) continue;
        const std::size_t next = far_end(sw, seg);
        if (tree_.segment_source[next]) continue;
        tree_.segment_source[next] = s;
        tree_.segment_depth[next] = tree_.segment_depth[seg] + 1;
        tree_.parent_switch[next] = sw;
        tree_.switch_upstream[sw] = seg;
        tree_.switch_downstream[sw] = next;
        queue.push_back(next);
      }
    }
  }
}

std::vector<Diagnostic> Topology::check() const {
  std::vector<Diagnostic> out;
  auto at = [](std::string_view list, std::size_t i) {
    return "/" + std::string(list) + "/" + std::to_string(i);
  };

  for (std::size_t i = 0; i < switches_.size(); ++i) {
    const auto& sw = switches_[i];
    if (ends_[i][0] == ends_[i][1]) {
      out.push_back({at("switches", i), "switch '" + sw.id + "' connects a segment to itself"});
    }
    if (sw.kind == SwitchKind::TIE && sw.normal != Position::Open) {
      out.push_back({at("switches", i),
                     "TIE switch '" + sw.id + "' must be normally Open (tie switches keep zones apart)"});
    }
    if (sw.kind != SwitchKind::TIE && sw.normal != Position::Closed) {
      out.push_back({at("switches", i), std::string(to_string(sw.kind)) + " switch '" + sw.id +
                                            "' must be normally Closed"});
    }
  }

  std::set<std::size_t> buses;
  for (std::size_t s = 0; s < sources_.size(); ++s) {
    if (!buses.insert(segment_index(sources_[s].segment)).second) {
      out.push_back({at("sources", s), "source '" + sources_[s].id + "' shares its bus segment"});
    }
    if (sources_[s].capacity_kw < 0) {
      out.push_back({at("sources", s), "source '" + sources_[s].id + "' has negative capacity"});
    }
  }
  if (sources_.empty()) out.push_back({"/sources", "topology has no sources"});

  for (std::size_t i = 0; i < loads_.size(); ++i) {
    if (loads_[i].demand_kw <= 0) {
      out.push_back({at("loads", i), "load '" + loads_[i].id + "' must have positive demand"});
    }
  }

  // Connectivity over all switches regardless of position.
  if (!segments_.empty()) {
    std::vector<bool> seen(segments_.size(), false);
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
      const std::size_t seg = queue.front();
      queue.pop_front();
      for (std::size_t sw : incident_[seg]) {
        const std::size_t next = far_end(sw, seg);
        if (!seen[next]) {
          seen[next] = true;
          queue.push_back(next);
        }
      }
    }
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      if (!seen[i]) {
        out.push_back({at("segments", i), "segment '" + segments_[i].id +
                                              "' is not connected to the rest of the network"});
      }
    }
  }

  // Radial normal operation: each normally-closed component is a tree
  // holding exactly one source.
  {
    std::vector<std::size_t> comp(segments_.size(), npos);
    std::size_t ncomp = 0;
    for (std::size_t start = 0; start < segments_.size(); ++start) {
      if (comp[start] != npos) continue;
      std::size_t vertices = 0;
      std::set<std::size_t> edges;
      std::vector<std::size_t> feeders;
      std::deque<std::size_t> queue{start};
      comp[start] = ncomp;
      while (!queue.empty()) {
        const std::size_t seg = queue.front();
        queue.pop_front();
        ++vertices;
        if (auto s = source_at(seg)) feeders.push_back(*s);
        for (std::size_t sw : incident_[seg]) {
          if (switches_[sw].normal != Position::Closed) continue;
          edges.insert(sw);
          const std::size_t next = far_end(sw, seg);
          if (comp[next] == npos) {
            comp[next] = ncomp;
            queue.push_back(next);
          }
        }
      }
      if (feeders.empty()) {
        out.push_back({at("segments", start), "segment '" + segments_[start].id +
                                                  "' is not fed by any source in the normal configuration"});
      } else if (feeders.size() > 1) {
        out.push_back({at("sources", feeders[1]),
                       "sources '" + sources_[feeders[0]].id + "' and '" + sources_[feeders[1]].id +
                           "' are connected in the normal configuration (not radial)"});
      }
      if (edges.size() + 1 != vertices) {
        out.push_back({at("segments", start), "normal configuration around segment '" +
                                                  segments_[start].id + "' contains a loop"});
      }
      ++ncomp;
    }
  }

  // Route shape: a switch chain from the load's segment to the source bus.
  for (const auto& [load_id, list] : routes_) {
    const auto& ld = load(load_id);
    for (std::size_t k = 0; k < list.size(); ++k) {
      const auto& route = list[k];
      const std::string where = "/routes/" + load_id + "/" + std::to_string(k);
      if (route.path.empty()) {
        out.push_back({where, "route for '" + load_id + "' has an empty path"});
        continue;
      }
      std::size_t cur = segment_index(ld.segment);
      bool chained = true;
      for (const auto& sw_id : route.path) {
        const std::size_t sw = switch_index(sw_id);
        if (ends_[sw][0] != cur && ends_[sw][1] != cur) {
          out.push_back({where, "route for '" + load_id + "' breaks at switch '" + sw_id + "'"});
          chained = false;
          break;
        }
        cur = far_end(sw, cur);
      }
      if (chained && cur != segment_index(source(route.source).segment)) {
        out.push_back({where, "route for '" + load_id + "' does not end at source '" + route.source + "'"});
      }
    }
  }

  // Capacity must cover what each source serves in the normal configuration.
  if (out.empty()) {
    const auto served = served_demand(*this, energization(*this, SwitchStates::normal(*this)));
    for (std::size_t s = 0; s < sources_.size(); ++s) {
      const auto it = served.find(sources_[s].id);
      const std::int64_t kw = it == served.end() ? 0 : it->second;
      if (kw > sources_[s].capacity_kw) {
        out.push_back({at("sources", s), "source '" + sources_[s].id + "' serves " + std::to_string(kw) +
                                             " kW normally but has capacity " +
                                             std::to_string(sources_[s].capacity_kw) + " kW"});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// SwitchStates

SwitchStates SwitchStates::normal(const Topology& topology) {
  SwitchStates s;
  for (const auto& sw : topology.switches()) s.positions_.emplace(sw.id, sw.normal);
  return s;
}

SwitchStates SwitchStates::uniform(const Topology& topology, Position position) {
  SwitchStates s;
  for (const auto& sw : topology.switches()) s.positions_.emplace(sw.id, position);
  return s;
}

Position SwitchStates::at(std::string_view id) const {
  auto it = positions_.find(id);
  if (it == positions_.end()) throw UnknownSwitch(id);
  return it->second;
}

void SwitchStates::set(std::string_view id, Position position) {
  auto it = positions_.find(id);
  if (it == positions_.end()) throw UnknownSwitch(id);
  it->second = position;
}

ActionResult apply_action(const Topology& topology, const SwitchStates& states,
                          std::string_view switch_id, Position position) {
  if (!topology.has_switch(switch_id)) throw UnknownSwitch(switch_id);
  ActionResult result{states, {std::string(switch_id), states.at(switch_id), position, false, true}};
  result.record.noop = result.record.from == position;
  result.states.set(switch_id, position);
  result.record.radial = energization(topology, result.states).radial;
  return result;
}

std::vector<RestorationRoute> restoration_routes(const Topology& topology, std::string_view load_id) {
  if (!topology.has_load(load_id)) throw UnknownLoad(load_id);
  auto it = topology.routes().find(std::string(load_id));
  if (it == topology.routes().end()) return {};
  return it->second;
}

}  // namespace gridteam::grid
