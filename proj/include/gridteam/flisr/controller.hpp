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
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gridteam/bdi/executor.hpp"
#include "gridteam/flisr/capacity.hpp"
#include "gridteam/flisr/deployment.hpp"
#include "gridteam/flisr/report.hpp"
#include "gridteam/flisr/restoration.hpp"
#include "gridteam/grid/locate.hpp"
#include "gridteam/grid/topology.hpp"
#include "gridteam/sim/message.hpp"
#include "gridteam/teams/teams.hpp"

namespace gridteam::flisr {

/// What the team layer needs from the world it runs in.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual std::int64_t now() const = 0;
  virtual std::int64_t latency() const = 0;
  /// Queue a message; the kernel stamps send and delivery times.
  virtual void send(sim::Message message) = 0;
  virtual const grid::SwitchStates& states() const = 0;
  virtual void milestone(const std::string& actor, const std::string& name, sim::Payload detail) = 0;
};

/// The FLISR goal hierarchy run by the substation team, its feeder teams
/// and the zone substations, on one executor.
///
/// Allocation: the substation team owns FLISR, fault-detection,
/// fault-resolution and fault-restoration; feeder teams own fault-isolation;
/// switch agents own the per-switch monitor goals. Zone substation agents
/// answer restoration requests from the capacity ledger.
class Controller {
 public:
  Controller(const grid::Topology& topology, Deployment deployment, Environment& env);
  Controller(const Controller&) = delete;
  Controller& operator=(const Controller&) = delete;

  /// A breaker opened on overcurrent.
  void on_trip(const std::string& switch_id, const std::string& agent, std::int64_t tick);
  /// A message addressed to a team or a zone substation.
  void on_message(const sim::Message& message);
  /// Agent failures take effect on the next reform() call.
  void on_agent_failed(const std::string& agent);

  /// Repair every task team that binds a failed agent.
  void reform();
  /// One executor step. Returns behaviour invocations.
  std::size_t step();

  bool started() const { return !trips_.empty(); }
  bool finished() const;
  std::optional<bdi::GoalState> goal_state() const;
  bool isolation_complete() const { return isolation_done_; }
  const std::set<std::string>& fault_region() const { return region_; }

  bool is_team(const std::string& id) const { return holarchy_.has_team(id); }
  bool is_zone(const std::string& id) const { return topology_->has_source(id); }
  bool agent_alive(const std::string& agent) const;
  const std::string& root_team() const { return root_; }
  const Deployment& deployment() const { return deployment_; }
  const teams::Holarchy& holarchy() const { return holarchy_; }

  /// Live agent bound to a switch in the restoration task team.
  std::optional<std::string> agent_for(const std::string& switch_id) const;
  const teams::TaskTeam& restoration_team() const { return restoration_tt_; }
  const teams::TaskTeam* isolation_team(const std::string& team) const;

  const CapacityLedger& ledger() const { return ledger_; }

  /// Plans attempted so far for each restoration unit (first load id).
  std::size_t attempts(const std::string& unit) const;

  FlisrReport report() const;

 private:
  struct UnitRecord {
    std::size_t attempts = 0;
    std::optional<RouteAdoption> pending;
    std::optional<RouteAdoption> adopted;
    std::optional<RestorationGrant> grant;
    std::string reason;
  };

  bdi::ProcessNode flisr_model();
  bdi::ProcessNode isolation_model(const std::string& team);
  bdi::ProcessNode unit_model(const RestorationUnit& unit);

  // Behaviours.
  bdi::GoalState delegate_isolation(bdi::TaskCall& call);
  bdi::GoalState query_detection(bdi::TaskCall& call, const std::string& team);
  bdi::GoalState locate(bdi::TaskCall& call, const std::string& team);
  bdi::GoalState isolate(bdi::TaskCall& call, const std::string& team);
  bdi::GoalState hold_at_breaker(bdi::TaskCall& call, const std::string& team);
  bdi::GoalState restore_loads(bdi::TaskCall& call);
  bdi::GoalState propose_route(bdi::TaskCall& call, const std::string& unit, std::size_t k);
  bdi::GoalState await_grant(bdi::TaskCall& call, const std::string& unit);
  bdi::GoalState execute_restoration(bdi::TaskCall& call);
  bdi::GoalState reset_latches(bdi::TaskCall& call);

  // Outstanding exchanges live in the context under "waits" so the ready
  // predicates can see them.
  std::uint64_t send(const std::string& from, const std::string& to, sim::MessageKind kind, sim::Payload payload);
  void await(bdi::DataContext& ctx, std::uint64_t id, std::int64_t deadline, const std::string& team_tt = "",
             const std::string& switch_id = "", const std::string& agent = "");
  bool waits_ready(const bdi::DataContext& ctx) const;
  std::optional<std::string> bound_agent(const std::string& team_tt, const std::string& switch_id) const;
  const teams::TaskTeam* task_team(const std::string& key) const;
  void handle_zone_request(const sim::Message& message);
  void milestone(const std::string& actor, const std::string& name, sim::Payload detail = sim::Payload::object());

  const grid::Topology* topology_;
  Deployment deployment_;
  Environment* env_;
  teams::Holarchy holarchy_;
  std::string root_;
  std::map<std::string, std::string> agent_switch_;

  std::map<std::string, teams::TaskTeam> isolation_tts_;  // keyed by feeder team
  teams::TaskTeam restoration_tt_;
  std::vector<std::string> pending_failures_;
  bool announced_ = false;

  bdi::Executor executor_;
  bdi::Executor::Handle root_handle_ = 0;
  std::optional<bdi::Executor::Handle> isolation_handle_;
  std::vector<bdi::Executor::Handle> unit_handles_;

  struct Trip {
    std::string switch_id;
    std::string agent;
    std::int64_t tick;
  };
  std::vector<Trip> trips_;
  std::map<std::uint64_t, sim::Message> responses_;
  std::uint64_t next_id_ = 1;

  // Episode results.
  std::string isolating_team_;
  grid::DetectionSnapshot snapshot_;
  std::optional<grid::FaultSegment> fault_;
  std::set<std::string> region_;
  bool held_at_breaker_ = false;
  bool isolation_done_ = false;
  std::vector<SwitchAction> isolation_actions_;
  std::vector<SwitchAction> restoration_actions_;
  std::optional<RestorationPlanner> planner_;
  std::map<std::string, UnitRecord> units_;
  std::vector<std::string> unit_order_;
  std::vector<MilestoneRecord> timeline_;
  CapacityLedger ledger_;
};

}  // namespace gridteam::flisr
