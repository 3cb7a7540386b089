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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gridteam/grid/locate.hpp"
#include "gridteam/grid/topology.hpp"

namespace gridteam::flisr {

enum class Outcome { NoFault, Restored, Degraded, Failed, Incomplete };
std::string_view to_string(Outcome outcome);

struct MilestoneRecord {
  std::int64_t t = 0;
  std::string actor;
  std::string name;
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();
};

struct SwitchAction {
  std::string switch_id;
  grid::Position position;
  std::int64_t t = 0;
};

/// Restoration result for one load that lost supply.
struct LoadOutcome {
  std::string load;
  std::string status;  // "restored", "unserved" or "isolated" (inside the fault region)
  std::optional<std::string> source;
  std::vector<std::string> path;
  std::optional<bool> granted;
  std::string reason;
  std::size_t attempts = 0;
  std::size_t routes = 0;
};

struct FlisrReport {
  Outcome outcome = Outcome::NoFault;
  std::string goal_state;  // root goal state, or "NotStarted"
  std::optional<std::string> tripped;
  grid::DetectionSnapshot detection;
  std::optional<grid::FaultSegment> fault;
  std::set<std::string> fault_region;
  bool held_at_breaker = false;
  std::vector<SwitchAction> isolation;
  std::vector<SwitchAction> restoration_actions;
  std::vector<LoadOutcome> restoration;
  std::map<std::string, std::optional<std::string>> energization;
  bool radial = true;
  std::vector<MilestoneRecord> timeline;
  std::vector<std::string> violations;

  const LoadOutcome* load(std::string_view id) const;
};

/// 0 full restoration (or nothing to do), 1 partial, 2 invariant violation.
int exit_code(const FlisrReport& report);

nlohmann::ordered_json to_json(const FlisrReport& report);

}  // namespace gridteam::flisr
