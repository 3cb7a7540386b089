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

#include "gridteam/teams/teams.hpp"

#include <algorithm>
#include <functional>

namespace gridteam::teams {

std::string_view to_string(TaskTeamStatus status) {
  switch (status) {
    case TaskTeamStatus::Full: return "Full";
    case TaskTeamStatus::Degraded: return "Degraded";
    case TaskTeamStatus::Broken: return "Broken";
  }
  return "?";
}

std::string_view to_string(ReformAction action) {
  switch (action) {
    case ReformAction::Rebound: return "Rebound";
    case ReformAction::Removed: return "Removed";
    case ReformAction::Broken: return "Broken";
  }
  return "?";
}

bool Performer::can_achieve(const std::set<std::string>& goals) const {
  return std::includes(capabilities.begin(), capabilities.end(), goals.begin(), goals.end());
}

std::optional<std::string> TaskTeam::performer_for(std::string_view role_name,
                                                   std::size_t index) const {
  for (const auto& b : bindings) {
    if (b.slot.role == role_name && b.slot.index == index) return b.performer;
  }
  return std::nullopt;
}

std::vector<std::string> TaskTeam::fillers(std::string_view role_name) const {
  std::vector<std::string> out;
  for (const auto& b : bindings) {
    if (b.slot.role == role_name) out.push_back(b.performer);
  }
  return out;
}

bool TaskTeam::binds(std::string_view performer) const {
  return std::any_of(bindings.begin(), bindings.end(),
                     [&](const Binding& b) { return b.performer == performer; });
}

const Role& TaskTeam::role(std::string_view name) const {
  for (const auto& r : roles) {
    if (r.name == name) return r;
  }
  throw TeamError("task team has no role '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Holarchy

void Holarchy::add_performer(Performer performer) {
  if (performer.id.empty()) throw TeamError("performer with empty id");
  if (teams_.contains(performer.id)) throw TeamError("id '" + performer.id + "' already names a team");
  const std::string id = performer.id;
  if (!performers_.emplace(id, std::move(performer)).second) {
    throw TeamError("duplicate performer '" + id + "'");
  }
}

void Holarchy::add_team(Team team) {
  if (team.id.empty()) throw TeamError("team with empty id");
  if (performers_.contains(team.id)) throw TeamError("id '" + team.id + "' already names a performer");
  const std::string id = team.id;
  if (!teams_.emplace(id, std::move(team)).second) throw TeamError("duplicate team '" + id + "'");
  team_order_.push_back(id);
}

const Performer& Holarchy::performer(std::string_view id) const {
  auto it = performers_.find(id);
  if (it == performers_.end()) throw TeamError("unknown performer '" + std::string(id) + "'");
  return it->second;
}

bool Holarchy::has_performer(std::string_view id) const { return performers_.contains(id); }

const Team& Holarchy::team(std::string_view id) const {
  auto it = teams_.find(id);
  if (it == teams_.end()) throw TeamError("unknown team '" + std::string(id) + "'");
  return it->second;
}

Team& Holarchy::team(std::string_view id) {
  auto it = teams_.find(id);
  if (it == teams_.end()) throw TeamError("unknown team '" + std::string(id) + "'");
  return it->second;
}

bool Holarchy::has_team(std::string_view id) const { return teams_.contains(id); }

const std::string& Holarchy::root() const {
  for (const auto& id : team_order_) {
    if (!parent_of(id)) return id;
  }
  throw TeamError("holarchy has no root team");
}

std::optional<std::string> Holarchy::parent_of(std::string_view member) const {
  for (const auto& id : team_order_) {
    const auto& t = teams_.find(id)->second;
    for (const auto& m : t.members) {
      if (m.id == member) return t.id;
    }
  }
  return std::nullopt;
}

void Holarchy::validate() const {
  if (teams_.empty()) throw TeamError("holarchy has no teams");
  std::map<std::string, int, std::less<>> parents;
  for (const auto& id : team_order_) {
    for (const auto& m : teams_.find(id)->second.members) {
      if (m.kind == MemberRef::Kind::Team && !teams_.contains(m.id)) {
        throw TeamError("team '" + id + "' lists unknown sub-team '" + m.id + "'");
      }
      if (m.kind == MemberRef::Kind::Performer && !performers_.contains(m.id)) {
        throw TeamError("team '" + id + "' lists unknown performer '" + m.id + "'");
      }
      if (++parents[m.id] > 1) throw TeamError("'" + m.id + "' belongs to more than one team");
    }
  }
  std::size_t roots = 0;
  for (const auto& id : team_order_) roots += parents.contains(id) ? 0 : 1;
  if (roots != 1) throw TeamError("holarchy must have exactly one root team");

  // Every team must be reachable from the root, which also rules out cycles.
  std::set<std::string> seen;
  std::function<void(const std::string&)> walk = [&](const std::string& id) {
    if (!seen.insert(id).second) throw TeamError("team membership cycle at '" + id + "'");
    for (const auto& m : teams_.find(id)->second.members) {
      if (m.kind == MemberRef::Kind::Team) walk(m.id);
    }
  };
  walk(root());
  if (seen.size() != teams_.size()) throw TeamError("team membership graph is not a single tree");
}

std::vector<std::string> Holarchy::candidates(std::string_view team_id) const {
  std::vector<std::string> out;
  std::set<std::string, std::less<>> seen;
  std::function<void(std::string_view)> walk = [&](std::string_view id) {
    if (!seen.emplace(id).second) return;
    for (const auto& m : team(id).members) {
      if (m.kind == MemberRef::Kind::Performer) {
        out.push_back(m.id);
      } else {
        walk(m.id);
      }
    }
  };
  walk(team_id);
  return out;
}

void Holarchy::mark_failed(std::string_view performer_id) {
  auto it = performers_.find(performer_id);
  if (it == performers_.end()) {
    throw TeamError("unknown performer '" + std::string(performer_id) + "'");
  }
  it->second.status = PerformerStatus::Failed;
}

// ---------------------------------------------------------------------------
// Task teams

namespace {

void check_role(const Role& role) {
  if (role.goals.empty()) throw TeamError("role '" + role.name + "' has no goals");
  if (role.min > role.max) throw TeamError("role '" + role.name + "' has min > max");
  if (role.min == 0 && !role.optional) {
    throw TeamError("role '" + role.name + "' has min 0 but is not optional");
  }
}

std::optional<std::string> first_spare(const Holarchy& holarchy, const TaskTeam& tt,
                                       const Role& role) {
  for (const auto& id : holarchy.candidates(tt.parent_team)) {
    const auto& p = holarchy.performer(id);
    if (p.alive() && !tt.binds(id) && p.can_achieve(role.goals)) return id;
  }
  return std::nullopt;
}

}  // namespace

TaskTeam form_task_team(const Holarchy& holarchy, std::string_view team_id,
                        const std::vector<Role>& roles) {
  TaskTeam tt;
  tt.parent_team = std::string(team_id);
  tt.roles = roles;
  const auto pool = holarchy.candidates(team_id);
  std::set<std::string> used;

  for (const auto& role : roles) {
    check_role(role);
    std::size_t filled = 0;
    for (const auto& id : pool) {
      if (filled == role.max) break;
      const auto& p = holarchy.performer(id);
      if (!p.alive() || used.contains(id) || !p.can_achieve(role.goals)) continue;
      tt.bindings.push_back(Binding{RoleInstance{role.name, filled}, id});
      used.insert(id);
      ++filled;
    }
    if (filled < role.min) throw UnfillableRole(role.name);
  }
  tt.status = TaskTeamStatus::Full;
  return tt;
}

ReformResult reform_task_team(const Holarchy& holarchy, const TaskTeam& task_team,
                              std::string_view failed) {
  auto it = std::find_if(task_team.bindings.begin(), task_team.bindings.end(),
                         [&](const Binding& b) { return b.performer == failed; });
  if (it == task_team.bindings.end()) {
    throw TeamError("performer '" + std::string(failed) + "' is not bound in this task team");
  }

  ReformResult result{task_team, ReformAction::Rebound, it->slot, std::nullopt};
  TaskTeam& tt = result.team;
  const Role& role = tt.role(it->slot.role);
  const auto pos = static_cast<std::size_t>(it - task_team.bindings.begin());

  // The failed performer is excluded by its status, or by still being bound.
  if (auto spare = first_spare(holarchy, tt, role)) {
    tt.bindings[pos].performer = *spare;
    result.replacement = *spare;
    return result;
  }

  tt.bindings.erase(tt.bindings.begin() + static_cast<std::ptrdiff_t>(pos));
  if (tt.fillers(role.name).size() >= role.min && tt.status != TaskTeamStatus::Broken) {
    tt.status = TaskTeamStatus::Degraded;
    result.action = ReformAction::Removed;
  } else {
    tt.status = TaskTeamStatus::Broken;
    result.action = ReformAction::Broken;
  }
  return result;
}

}  // namespace gridteam::teams
