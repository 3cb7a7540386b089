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

#include "gridteam/sim/scenario.hpp"

#include <set>

namespace gridteam::sim {

SimConfig SimConfig::with(const Scenario& scenario) const {
  SimConfig c = *this;
  if (scenario.tick_budget) c.max_ticks = *scenario.tick_budget;
  if (scenario.seed) c.seed = *scenario.seed;
  if (scenario.latency) c.latency = *scenario.latency;
  return c;
}

void check_config(const SimConfig& config) {
  if (config.latency < 1) throw ScenarioError("latency must be at least 1 tick");
  if (config.max_ticks < 1) throw ScenarioError("tick budget must be at least 1");
  for (const auto& [sw, p] : config.protection) {
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw ScenarioError("protection for '" + sw + "': " + e.what());
    }
  }
}

void check_scenario(const grid::Topology& topology, const flisr::Deployment& deployment, const Scenario& scenario) {
  for (std::size_t i = 0; i < scenario.faults.size(); ++i) {
    const auto& f = scenario.faults[i];
    const std::string where = "faults[" + std::to_string(i) + "]: ";
    if (f.tick < 0) throw ScenarioError(where + "negative tick");
    if (!topology.has_segment(f.segment)) throw ScenarioError(where + "unknown segment '" + f.segment + "'");
    if (f.type != "Permanent") throw ScenarioError(where + "unsupported fault type '" + f.type + "'");
  }
  std::set<std::string> agents;
  for (const auto& a : deployment.agents) agents.insert(a.id);
  for (std::size_t i = 0; i < scenario.agent_failures.size(); ++i) {
    const auto& f = scenario.agent_failures[i];
    const std::string where = "agent_failures[" + std::to_string(i) + "]: ";
    if (f.tick < 0) throw ScenarioError(where + "negative tick");
    if (!agents.contains(f.agent)) throw ScenarioError(where + "unknown agent '" + f.agent + "'");
  }
  if (scenario.tick_budget && *scenario.tick_budget < 1) throw ScenarioError("tick_budget must be at least 1");
  if (scenario.latency && *scenario.latency < 1) throw ScenarioError("latency must be at least 1 tick");
}

ied::ProtectionConfig default_protection(const grid::SwitchingUnit& sw) {
  ied::ProtectionConfig c;
  c.trip_enabled = sw.kind == grid::SwitchKind::CB;
  return c;
}

}  // namespace gridteam::sim
