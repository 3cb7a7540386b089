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

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridteam/grid/topology.hpp"

namespace gridteam::flisr {

/// A switch agent: the intelligence attached to one switching unit.
struct AgentSpec {
  std::string id;
  std::string controls;                // switch id
  std::set<std::string> capabilities;  // "control:<switch>", "monitor"
};

/// A team and its members (agent ids or team ids), in declaration order.
struct TeamSpec {
  std::string id;
  std::vector<std::string> members;
};

struct Deployment {
  std::vector<AgentSpec> agents;
  std::vector<TeamSpec> teams;  // must form a single tree
};

class DeploymentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Capabilities an agent needs to look after `switch_id`.
std::set<std::string> switch_capabilities(const std::string& switch_id);

/// One agent per switch, named after it.
std::vector<AgentSpec> default_agents(const grid::Topology& topology);

/// A root "Substation" team over one feeder team per source ("Feeder1",
/// "Feeder2", ... in source order). Feeder teams hold the agents of the CB
/// and ROS switches their source feeds normally; tie agents sit in the root.
std::vector<TeamSpec> default_teams(const grid::Topology& topology, const std::vector<AgentSpec>& agents);

Deployment default_deployment(const grid::Topology& topology);

/// Throws DeploymentError on duplicate ids, unknown switches, agents in no
/// team, or a team structure that is not a single tree.
void check_deployment(const grid::Topology& topology, const Deployment& deployment);

}  // namespace gridteam::flisr
