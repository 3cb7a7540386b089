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

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gridteam/bdi/context.hpp"
#include "gridteam/bdi/process.hpp"

namespace gridteam::teams {

enum class PerformerStatus { Alive, Failed };

struct Performer {
  std::string id;
  std::set<std::string> capabilities;  // goal names this performer can achieve
  PerformerStatus status = PerformerStatus::Alive;

  bool alive() const { return status == PerformerStatus::Alive; }
  bool can_achieve(const std::set<std::string>& goals) const;
};

struct MemberRef {
  enum class Kind { Performer, Team };
  Kind kind;
  std::string id;

  static MemberRef performer(std::string id) { return {Kind::Performer, std::move(id)}; }
  static MemberRef team(std::string id) { return {Kind::Team, std::move(id)}; }
};

/// A team owns its beliefs and process models; members are performers or
/// sub-teams, in declaration order.
struct Team {
  std::string id;
  std::vector<MemberRef> members;
  bdi::DataContext beliefs{};
  std::map<std::string, bdi::ProcessNode> models{};
};

/// A named collection of goals with a filler multiplicity.
struct Role {
  std::string name;
  std::set<std::string> goals;
  std::size_t min = 1;
  std::size_t max = 1;
  bool optional = false;  // required for min == 0
};

enum class TaskTeamStatus { Full, Degraded, Broken };
std::string_view to_string(TaskTeamStatus status);

struct RoleInstance {
  std::string role;
  std::size_t index = 0;

  friend auto operator<=>(const RoleInstance&, const RoleInstance&) = default;
};

struct Binding {
  RoleInstance slot;
  std::string performer;

  friend bool operator==(const Binding&, const Binding&) = default;
};

struct TaskTeam {
  std::string parent_team;
  std::vector<Role> roles;
  std::vector<Binding> bindings;  // in role order, then instance order
  TaskTeamStatus status = TaskTeamStatus::Full;

  std::optional<std::string> performer_for(std::string_view role, std::size_t index = 0) const;
  std::vector<std::string> fillers(std::string_view role) const;
  bool binds(std::string_view performer) const;
  const Role& role(std::string_view name) const;
};

class TeamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnfillableRole : public std::runtime_error {
 public:
  explicit UnfillableRole(std::string role)
      : std::runtime_error("role '" + role + "' cannot be filled to its minimum multiplicity"),
        role_(std::move(role)) {}
  const std::string& role() const { return role_; }

 private:
  std::string role_;
};

/// Performers plus the hierarchical team structure over them.
class Holarchy {
 public:
  void add_performer(Performer performer);
  void add_team(Team team);

  /// Throws TeamError unless the membership graph is a single tree whose
  /// references all resolve.
  void validate() const;

  const Performer& performer(std::string_view id) const;
  bool has_performer(std::string_view id) const;
  const Team& team(std::string_view id) const;
  Team& team(std::string_view id);
  bool has_team(std::string_view id) const;
  const std::string& root() const;
  /// Team that directly lists `member` (performer or team) among its members.
  std::optional<std::string> parent_of(std::string_view member) const;

  /// Performers in the subtree of `team_id`, depth first in declaration order.
  std::vector<std::string> candidates(std::string_view team_id) const;

  void mark_failed(std::string_view performer_id);

  const std::map<std::string, Performer, std::less<>>& performers() const { return performers_; }
  const std::vector<std::string>& team_order() const { return team_order_; }

 private:
  std::map<std::string, Performer, std::less<>> performers_;
  std::map<std::string, Team, std::less<>> teams_;
  std::vector<std::string> team_order_;
};

/// Fill each role, in order, with the first capable Alive candidates in
/// member order, up to the role's max. One role instance per performer.
TaskTeam form_task_team(const Holarchy& holarchy, std::string_view team_id,
                        const std::vector<Role>& roles);

enum class ReformAction { Rebound, Removed, Broken };
std::string_view to_string(ReformAction action);

struct ReformResult {
  TaskTeam team;
  ReformAction action;
  RoleInstance slot;
  std::optional<std::string> replacement;
};

/// Repair a task team after `failed` stops being available: rebind its role
/// instance to a spare, drop it if the role minimum still holds (Degraded),
/// or mark the task team Broken. Other bindings are never touched.
ReformResult reform_task_team(const Holarchy& holarchy, const TaskTeam& task_team,
                              std::string_view failed);

}  // namespace gridteam::teams
