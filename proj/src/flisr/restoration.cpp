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

#include "gridteam/flisr/restoration.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "gridteam/grid/energization.hpp"

namespace gridteam::flisr {

namespace {

using grid::Position;

std::vector<std::size_t> hop_distance(const grid::Topology& t, const std::set<std::string>& region) {
  const std::size_t n = t.segments().size();
  std::vector<std::size_t> dist(n, grid::Topology::npos);
  std::deque<std::size_t> queue;
  for (const auto& seg : region) {
    const std::size_t i = t.segment_index(seg);
    dist[i] = 0;
    queue.push_back(i);
  }
  while (!queue.empty()) {
    const std::size_t seg = queue.front();
    queue.pop_front();
    for (std::size_t sw : t.incident(seg)) {
      const std::size_t next = t.far_end(sw, seg);
      if (dist[next] != grid::Topology::npos) continue;
      dist[next] = dist[seg] + 1;
      queue.push_back(next);
    }
  }
  for (auto& d : dist) {
    if (d == grid::Topology::npos) d = 0;
  }
  return dist;
}

// Closed switches inside the energizable component around `segment`.
std::vector<std::size_t> component_switches(const grid::Topology& t, const grid::SwitchStates& s,
                                            std::size_t segment) {
  std::vector<bool> seen(t.segments().size(), false);
  std::set<std::size_t> found;
  std::deque<std::size_t> queue{segment};
  seen[segment] = true;
  while (!queue.empty()) {
    const std::size_t seg = queue.front();
    queue.pop_front();
    for (std::size_t sw : t.incident(seg)) {
      if (!s.closed(t.switches()[sw].id)) continue;
      found.insert(sw);
      const std::size_t next = t.far_end(sw, seg);
      if (!seen[next]) {
        seen[next] = true;
        queue.push_back(next);
      }
    }
  }
  return {found.begin(), found.end()};
}

// A closed cycle, whether or not it joins two sources.
bool closed_loop(const grid::Topology& t, const grid::SwitchStates& s) {
  std::vector<std::size_t> parent(t.segments().size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t sw = 0; sw < t.switches().size(); ++sw) {
    if (!s.closed(t.switches()[sw].id)) continue;
    const std::size_t a = find(t.end_index(sw, 0));
    const std::size_t b = find(t.end_index(sw, 1));
    if (a == b) return true;
    parent[a] = b;
  }
  return false;
}

}  // namespace

std::vector<RestorationUnit> restoration_units(const grid::Topology& topology, const grid::SwitchStates& actual,
                                               const std::set<std::string>& region) {
  const auto e = grid::energization(topology, actual);
  const auto dist = hop_distance(topology, region);
  std::vector<RestorationUnit> units;
  for (std::size_t i = 0; i < topology.segments().size(); ++i) {
    const auto& seg = topology.segments()[i];
    if (seg.loads.empty() || region.contains(seg.id) || e.energized(i)) continue;
    RestorationUnit unit{seg.id, seg.loads, {}, 0, dist[i]};
    std::sort(unit.loads.begin(), unit.loads.end());
    for (const auto& load : unit.loads) {
      unit.demand_kw += topology.load(load).demand_kw;
      for (const auto& route : grid::restoration_routes(topology, load)) {
        if (std::find(unit.routes.begin(), unit.routes.end(), route) == unit.routes.end()) {
          unit.routes.push_back(route);
        }
      }
    }
    units.push_back(std::move(unit));
  }
  std::stable_sort(units.begin(), units.end(), [](const RestorationUnit& a, const RestorationUnit& b) {
    if (a.distance != b.distance) return a.distance > b.distance;
    return a.name() < b.name();
  });
  return units;
}

RestorationPlanner::RestorationPlanner(const grid::Topology& topology, grid::SwitchStates actual,
                                       std::set<std::string> region)
    : topology_(&topology), actual_(std::move(actual)), trial_(actual_), region_(std::move(region)) {
  units_ = restoration_units(topology, actual_, region_);
}

const RestorationUnit& RestorationPlanner::unit(const std::string& name) const {
  for (const auto& u : units_) {
    if (u.name() == name) return u;
  }
  throw std::out_of_range("no restoration unit '" + name + "'");
}

std::optional<RouteAdoption> RestorationPlanner::propose(const RestorationUnit& unit,
                                                         const grid::RestorationRoute& route,
                                                         const Operable& operable) {
  const auto& t = *topology_;
  RouteAdoption adoption{unit.name(), route, {}, {}};
  for (const auto& sw : route.path) {
    if (trial_.closed(sw)) {
      // Closed only on trial: another pending adoption owns it.
      if (!actual_.closed(sw)) return std::nullopt;
      continue;
    }
    if (!operable(sw)) return std::nullopt;
    adoption.closes.push_back(sw);
  }
  if (adoption.closes.empty()) return std::nullopt;

  const std::size_t target = t.segment_index(unit.segment);
  const std::size_t source = t.source_index(route.source);
  const auto base = grid::energization(t, trial_);
  if (base.energized(target)) return std::nullopt;

  grid::SwitchStates closed = trial_;
  for (const auto& sw : adoption.closes) closed.set(sw, Position::Closed);

  const std::set<std::string> on_path(route.path.begin(), route.path.end());
  std::vector<std::size_t> pool;
  for (std::size_t sw : component_switches(t, closed, target)) {
    const auto& id = t.switches()[sw].id;
    if (!on_path.contains(id) && operable(id)) pool.push_back(sw);
  }

  const std::set<std::string> wanted(unit.loads.begin(), unit.loads.end());
  auto acceptable = [&](const grid::SwitchStates& s) {
    const auto e = grid::energization(t, s);
    if (!e.radial || e.segment_source[target] != source || closed_loop(t, s)) return false;
    for (const auto& seg : region_) {
      if (e.energized(t.segment_index(seg))) return false;
    }
    for (const auto& load : t.loads()) {
      const auto& before = base.load_source.at(load.id);
      const auto& after = e.load_source.at(load.id);
      if (before) {
        if (after != before) return false;
      } else if (after.has_value() != wanted.contains(load.id)) {
        return false;
      }
    }
    return true;
  };

  const std::size_t limit = std::min(kMaxSectionalizing, pool.size());
  for (std::size_t k = 0; k <= limit; ++k) {
    // Subsets of size k in lexicographic order of pool position.
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      grid::SwitchStates s = closed;
      for (std::size_t i : pick) s.set(t.switches()[pool[i]].id, Position::Open);
      if (acceptable(s)) {
        for (std::size_t i : pick) {
          adoption.opens.push_back(t.switches()[pool[i]].id);
          opened_by_[adoption.opens.back()] = proposals_;
        }
        trial_ = std::move(s);
        adopted_.push_back({proposals_++, adoption});
        return adoption;
      }
      // Next combination.
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == pool.size() - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

void RestorationPlanner::withdraw(const RouteAdoption& adoption) {
  for (const auto& sw : adoption.closes) trial_.set(sw, Position::Open);
  auto it = std::find_if(adopted_.begin(), adopted_.end(), [&](const Adopted& a) {
    return a.adoption.unit == adoption.unit && a.adoption.route == adoption.route;
  });
  if (it != adopted_.end()) adopted_.erase(it);
}

std::vector<PlannedAction> RestorationPlanner::actions() const {
  std::vector<PlannedAction> out;
  std::optional<std::size_t> last;
  for (const auto& a : adopted_) last = std::max(last.value_or(0), a.seq);
  for (const auto& sw : topology_->switches()) {
    if (!actual_.closed(sw.id) || trial_.closed(sw.id)) continue;
    auto it = opened_by_.find(sw.id);
    if (last && it != opened_by_.end() && it->second <= *last) out.push_back({sw.id, Position::Open});
  }
  std::set<std::string> done;
  for (const auto& [seq, a] : adopted_) {
    for (const auto& sw : a.closes) {
      if (!actual_.closed(sw) && trial_.closed(sw) && done.insert(sw).second) {
        out.push_back({sw, Position::Closed});
      }
    }
  }
  return out;
}

RestorationRequest RestorationPlanner::request_for(const RouteAdoption& adoption, const std::string& team) const {
  const auto& u = unit(adoption.unit);
  return RestorationRequest{u.name(), u.loads, u.demand_kw, adoption.route, team};
}

RestorationPlan plan_restoration(const grid::Topology& topology, const grid::SwitchStates& actual,
                                 const std::set<std::string>& region, CapacityLedger& ledger,
                                 const Operable& operable) {
  RestorationPlanner planner(topology, actual, region);
  const auto current = grid::energization(topology, actual);
  RestorationPlan plan;
  for (const auto& unit : planner.units()) {
    UnitOutcome outcome{unit.name(), std::nullopt, std::nullopt, 0};
    for (const auto& route : unit.routes) {
      ++outcome.attempts;
      auto adoption = planner.propose(unit, route, operable);
      if (!adoption) continue;
      auto decision = ledger.grant(planner.request_for(*adoption, "Substation"), current);
      outcome.grant = decision;
      if (decision.granted) {
        outcome.adoption = std::move(adoption);
        break;
      }
      planner.withdraw(*adoption);
    }
    plan.outcomes.push_back(std::move(outcome));
  }
  plan.actions = planner.actions();
  return plan;
}

}  // namespace gridteam::flisr
