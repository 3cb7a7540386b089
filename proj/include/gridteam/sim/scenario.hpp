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
#include <stdexcept>
#include <string>
#include <vector>

#include "gridteam/flisr/deployment.hpp"
#include "gridteam/grid/topology.hpp"
#include "gridteam/ied/protection.hpp"

namespace gridteam::sim {

struct FaultSpec {
  std::int64_t tick = 0;
  std::string segment;
  std::string type = "Permanent";
};

struct AgentFailureSpec {
  std::int64_t tick = 0;
  std::string agent;
};

/// Faults and agent failures to inject. Optional fields override SimConfig
/// defaults; command-line flags override both.
struct Scenario {
  std::vector<FaultSpec> faults;
  std::vector<AgentFailureSpec> agent_failures;
  std::optional<std::int64_t> tick_budget;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> latency;
};

struct SimConfig {
  std::int64_t latency = 1;
  std::int64_t max_ticks = 200;
  std::uint64_t seed = 42;
  /// Per-switch protection settings. Switches not listed get the default
  /// threshold, with tripping enabled on breakers only.
  std::map<std::string, ied::ProtectionConfig> protection;
  double fault_current_factor = 10.0;  // multiples of the pickup threshold
  double load_current_factor = 0.5;
  /// Apply the scenario's optional overrides.
  SimConfig with(const Scenario& scenario) const;
};

class ScenarioError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws ScenarioError on unknown segments or agents, negative ticks,
/// unsupported fault types or a non-positive latency or budget.
void check_scenario(const grid::Topology& topology, const flisr::Deployment& deployment, const Scenario& scenario);
void check_config(const SimConfig& config);

/// Default protection settings for one switch.
ied::ProtectionConfig default_protection(const grid::SwitchingUnit& sw);

}  // namespace gridteam::sim
