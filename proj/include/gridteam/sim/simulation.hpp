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

#include "gridteam/flisr/controller.hpp"
#include "gridteam/flisr/report.hpp"
#include "gridteam/grid/topology.hpp"
#include "gridteam/ied/protection.hpp"
#include "gridteam/sim/event_log.hpp"
#include "gridteam/sim/scenario.hpp"

namespace gridteam::sim {

struct RunResult {
  EventLog log;
  flisr::FlisrReport report;
  int exit_code = 0;
  std::int64_t ticks = 0;  // ticks simulated
};

/// Discrete-time kernel. Each tick: inject faults and failures, deliver due
/// messages, sample the IEDs, apply delayed breaker operations, repair task
/// teams, run one executor step, then check safety.
class Simulation final : public flisr::Environment {
 public:
  Simulation(const grid::Topology& topology, flisr::Deployment deployment, Scenario scenario, SimConfig config);

  /// Advance one tick. Returns false once the run is over.
  bool tick();
  bool done() const { return done_; }
  RunResult result() const;

  // flisr::Environment
  std::int64_t now() const override { return now_; }
  std::int64_t latency() const override { return config_.latency; }
  void send(Message message) override;
  const grid::SwitchStates& states() const override { return states_; }
  void milestone(const std::string& actor, const std::string& name, Payload detail) override;

  const EventLog& log() const { return log_; }
  const flisr::Controller& controller() const { return *controller_; }
  const SimConfig& config() const { return config_; }
  const std::vector<std::string>& violations() const { return violations_; }
  std::size_t in_flight() const { return in_flight_.size(); }
  const ied::ProtectionPipeline& ied(const std::string& switch_id) const { return ieds_.at(switch_id); }
  /// Switches carrying fault current in the present configuration.
  std::set<std::string> fault_current_switches() const;

 private:
  bool agent_alive(const std::string& agent) const;
  std::optional<std::string> host_agent(const std::string& switch_id) const;
  void inject();
  void deliver(const Message& message);
  void react(const Message& message);
  void sample();
  void operate_scheduled();
  void set_position(const std::string& switch_id, grid::Position position, const std::string& cause,
                    const std::string& agent);
  void check_safety();
  void violation(const std::string& text);

  const grid::Topology* topology_;
  Scenario scenario_;
  SimConfig config_;
  std::vector<flisr::AgentSpec> agents_;
  std::map<std::string, std::string> agent_switch_;
  std::set<std::string> failed_;
  std::map<std::string, ied::ProtectionPipeline> ieds_;
  std::set<std::string> faulted_;

  struct Scheduled {
    std::int64_t at;
    std::string switch_id;
    std::string agent;
  };
  std::vector<Scheduled> scheduled_;

  std::map<std::pair<std::int64_t, std::uint64_t>, Message> in_flight_;
  std::uint64_t next_seq_ = 0;

  grid::SwitchStates states_;
  EventLog log_;
  std::vector<std::string> violations_;
  std::int64_t now_ = 0;
  std::int64_t ticks_ = 0;
  bool done_ = false;

  std::unique_ptr<flisr::Controller> controller_;
};

/// Run a scenario to completion.
RunResult run(const grid::Topology& topology, const flisr::Deployment& deployment, const Scenario& scenario,
              const SimConfig& config);

}  // namespace gridteam::sim
