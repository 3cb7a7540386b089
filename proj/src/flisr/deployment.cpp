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

#include "gridteam/flisr/deployment.hpp"

#include <map>

#include "gridteam/teams/teams.hpp"

namespace gridteam::flisr {

std::set<std::string> switch_capabilities(const std::string& switch_id) {
  return {"control:" + switch_id, "monitor"};
}

std::vector<AgentSpec> default_agents(const grid::Topology& topology) {
  std::vector<AgentSpec> agents;
  for (const auto& sw : topology.switches()) agents.push_back({sw.id, sw.id, switch_capabilities(sw.id)});
  return agents;
}

std::vector<TeamSpec> default_teams(const grid::Topology& topology, const std::vector<AgentSpec>& agents) {
  const auto& tree = topology.normal_tree();
  std::vector<TeamSpec> feeders(topology.sources().size());
  for (std::size_t s = 0; s < feeders.size(); ++s) feeders[s].id = "Feeder" + std::to_string(s + 1);
  TeamSpec root{"Substation", {}};
  std::vector<std::string> loose;
  for (const auto& agent : agents) {
    const std::size_t sw = topology.switch_index(agent.controls);
    const std::size_t down = tree.switch_downstream[sw];
    if (topology.switches()[sw].kind != grid::SwitchKind::TIE && down != grid::Topology::npos &&
        tree.segment_source[down]) {
      feeders[*tree.segment_source[down]].members.push_back(agent.id);
    } else {
      loose.push_back(agent.id);
    }
  }
  std::vector<TeamSpec> out;
  for (auto& f : feeders) {
    if (f.members.empty()) continue;
    root.members.push_back(f.id);
    out.push_back(std::move(f));
  }
  root.members.insert(root.members.end(), loose.begin(), loose.end());
  out.insert(out.begin(), std::move(root));
  return out;
}

Deployment default_deployment(const grid::Topology& topology) {
  Deployment d;
  d.agents = default_agents(topology);
  d.teams = default_teams(topology, d.agents);
  return d;
}

void check_deployment(const grid::Topology& topology, const Deployment& deployment) {
  if (deployment.agents.empty()) throw DeploymentError("no agents");
  std::set<std::string> ids;
  for (const auto& a : deployment.agents) {
    if (a.id.empty()) throw DeploymentError("agent with empty id");
    if (!ids.insert(a.id).second) throw DeploymentError("duplicate agent '" + a.id + "'");
    if (!topology.has_switch(a.controls)) {
      throw DeploymentError("agent '" + a.id + "' controls unknown switch '" + a.controls + "'");
    }
    if (topology.has_source(a.id)) throw DeploymentError("agent '" + a.id + "' shares an id with a source");
  }
  teams::Holarchy h;
  for (const auto& a : deployment.agents) h.add_performer({a.id, a.capabilities});
  std::set<std::string> team_ids;
  for (const auto& t : deployment.teams) {
    if (topology.has_source(t.id)) throw DeploymentError("team '" + t.id + "' shares an id with a source");
    team_ids.insert(t.id);
  }
  std::set<std::string> placed;
  try {
    for (const auto& t : deployment.teams) {
      teams::Team team{t.id, {}};
      for (const auto& m : t.members) {
        team.members.push_back(team_ids.contains(m) ? teams::MemberRef::team(m) : teams::MemberRef::performer(m));
        placed.insert(m);
      }
      h.add_team(std::move(team));
    }
    h.validate();
  } catch (const teams::TeamError& e) {
    throw DeploymentError(e.what());
  }
  for (const auto& a : deployment.agents) {
    if (!placed.contains(a.id)) throw DeploymentError("agent '" + a.id + "' belongs to no team");
  }
}

}  // namespace gridteam::flisr
