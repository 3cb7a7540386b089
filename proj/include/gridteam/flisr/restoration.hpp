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

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gridteam/flisr/capacity.hpp"
#include "gridteam/grid/topology.hpp"

namespace gridteam::flisr {

/// De-energized healthy segment with loads, restored as one piece.
struct RestorationUnit {
  std::string segment;
  std::vector<std::string> loads;  // ascending id
  std::vector<grid::RestorationRoute> routes;  // routes of its loads, in load then priority order
  std::int64_t demand_kw = 0;
  std::size_t distance = 0;  // switch hops from the fault region

  const std::string& name() const { return loads.front(); }
};

/// Tentative switching for one adopted route.
struct RouteAdoption {
  std::string unit;
  grid::RestorationRoute route;
  std::vector<std::string> closes;  // path switches that were open
  std::vector<std::string> opens;   // sectionalizing switches
};

struct PlannedAction {
  std::string switch_id;
  grid::Position position;

  friend bool operator==(const PlannedAction&, const PlannedAction&) = default;
};

/// Whether a switch can be commanded (some live agent controls it).
using Operable = std::function<bool(const std::string& switch_id)>;

/// Restoration units for the given fault region, farthest from the fault
/// first, ties by load id.
std::vector<RestorationUnit> restoration_units(const grid::Topology& topology, const grid::SwitchStates& actual,
                                               const std::set<std::string>& region);

/// Trial switch states shared by all restoration goals of one episode.
class RestorationPlanner {
 public:
  static constexpr std::size_t kMaxSectionalizing = 3;

  RestorationPlanner(const grid::Topology& topology, grid::SwitchStates actual, std::set<std::string> region);

  const std::vector<RestorationUnit>& units() const { return units_; }
  const RestorationUnit& unit(const std::string& name) const;
  const grid::SwitchStates& trial() const { return trial_; }
  const grid::SwitchStates& actual() const { return actual_; }

  /// Check a route against the trial states and adopt it tentatively. The
  /// route must close at least one open switch, must not reuse a switch
  /// closed by another pending adoption, and with the smallest set of extra
  /// openings must feed exactly the unit's loads from the route's source,
  /// keep everything already fed on its source, stay radial and leave the
  /// fault region dead.
  std::optional<RouteAdoption> propose(const RestorationUnit& unit, const grid::RestorationRoute& route,
                                       const Operable& operable);

  /// Undo the closures of a refused adoption. Its openings stay: other
  /// adoptions may have been checked against them.
  void withdraw(const RouteAdoption& adoption);

  /// Switching needed to reach the trial states: openings in switch
  /// declaration order, then closures in adoption order.
  std::vector<PlannedAction> actions() const;

  RestorationRequest request_for(const RouteAdoption& adoption, const std::string& team) const;

 private:
  const grid::Topology* topology_;
  grid::SwitchStates actual_;
  grid::SwitchStates trial_;
  std::set<std::string> region_;
  std::vector<RestorationUnit> units_;
  struct Adopted {
    std::size_t seq;
    RouteAdoption adoption;
  };
  std::vector<Adopted> adopted_;
  std::map<std::string, std::size_t> opened_by_;  // switch -> proposal that opened it
  std::size_t proposals_ = 0;
};

struct UnitOutcome {
  std::string unit;
  std::optional<RouteAdoption> adoption;
  std::optional<RestorationGrant> grant;
  std::size_t attempts = 0;
};

struct RestorationPlan {
  std::vector<PlannedAction> actions;
  std::vector<UnitOutcome> outcomes;
};

/// Synchronous restoration planning: units in order, routes in priority
/// order, each adopted iff feasible and granted by `ledger` against the
/// `actual` energization.
RestorationPlan plan_restoration(const grid::Topology& topology, const grid::SwitchStates& actual,
                                 const std::set<std::string>& region, CapacityLedger& ledger,
                                 const Operable& operable);

}  // namespace gridteam::flisr
