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

#include "gridteam/sim/simulation.hpp"

#include <algorithm>
#include <stdexcept>

#include "gridteam/grid/energization.hpp"

namespace gridteam::sim {

Simulation::Simulation(const grid::Topology& topology, flisr::Deployment deployment, Scenario scenario,
                       SimConfig config)
    : topology_(&topology), scenario_(std::move(scenario)), config_(std::move(config)) {
  check_config(config_);
  flisr::check_deployment(topology, deployment);
  check_scenario(topology, deployment, scenario_);
  agents_ = deployment.agents;
  for (const auto& a : agents_) agent_switch_[a.id] = a.controls;

  states_ = grid::SwitchStates::normal(topology);
  for (const auto& sw : topology.switches()) {
    auto it = config_.protection.find(sw.id);
    auto p = ieds_.emplace(sw.id, ied::ProtectionPipeline(sw.id, it != config_.protection.end()
                                                                      ? it->second
                                                                      : default_protection(sw)));
    p.first->second.set_position(sw.normal == grid::Position::Open);
  }

  log_.set_header({{"seed", config_.seed}, {"latency", config_.latency}, {"max_ticks", config_.max_ticks}});
  controller_ = std::make_unique<flisr::Controller>(topology, std::move(deployment), *this);
}

bool Simulation::agent_alive(const std::string& agent) const {
  return agent_switch_.contains(agent) && !failed_.contains(agent);
}

std::optional<std::string> Simulation::host_agent(const std::string& switch_id) const {
  for (const auto& a : agents_) {
    if (a.controls == switch_id && !failed_.contains(a.id)) return a.id;
  }
  return std::nullopt;
}

void Simulation::send(Message message) {
  const bool known = agent_switch_.contains(message.dst) || controller_->is_team(message.dst) ||
                     controller_->is_zone(message.dst);
  if (!known) throw std::invalid_argument("message to unknown recipient '" + message.dst + "'");
  message.sent = now_;
  message.deliver = now_ + config_.latency;
  message.seq = next_seq_++;
  log_.append(now_, EventKind::MessageSend, message.src,
              {{"kind", to_string(message.kind)},
               {"dst", message.dst},
               {"msg", message.seq},
               {"deliver", message.deliver},
               {"payload", message.payload}});
  in_flight_.emplace(std::make_pair(message.deliver, message.seq), std::move(message));
}

void Simulation::milestone(const std::string& actor, const std::string& name, Payload detail) {
  log_.append(now_, EventKind::Milestone, actor, {{"name", name}, {"detail", std::move(detail)}});
}

std::set<std::string> Simulation::fault_current_switches() const {
  std::set<std::string> out;
  for (const auto& seg : faulted_) {
    for (auto& sw : grid::feed_path(*topology_, states_, topology_->segment_index(seg))) out.insert(sw);
  }
  return out;
}

bool Simulation::tick() {
  if (done_) return false;
  // Each phase stops short once a safety violation has been flagged.
  const auto halted = [this] { return !violations_.empty(); };

  inject();
  while (!halted() && !in_flight_.empty() && in_flight_.begin()->first.first <= now_) {
    const Message m = std::move(in_flight_.begin()->second);
    in_flight_.erase(in_flight_.begin());
    deliver(m);
  }
  if (!halted()) sample();
  if (!halted()) operate_scheduled();
  if (!halted()) {
    controller_->reform();
    controller_->step();
  }
  if (!halted()) check_safety();

  ++now_;
  ++ticks_;
  if (halted() || (controller_->finished() && in_flight_.empty()) || ticks_ >= config_.max_ticks) done_ = true;
  return !done_;
}

void Simulation::inject() {
  for (const auto& f : scenario_.faults) {
    if (f.tick != now_ || faulted_.contains(f.segment)) continue;
    faulted_.insert(f.segment);
    log_.append(now_, EventKind::FaultInjected, f.segment, {{"type", f.type}});
  }
  for (const auto& f : scenario_.agent_failures) {
    if (f.tick != now_ || failed_.contains(f.agent)) continue;
    failed_.insert(f.agent);
    log_.append(now_, EventKind::AgentFailed, f.agent, {{"switch", agent_switch_.at(f.agent)}});
    controller_->on_agent_failed(f.agent);
  }
}

void Simulation::deliver(const Message& message) {
  Payload detail{{"kind", to_string(message.kind)}, {"src", message.src}, {"msg", message.seq},
                 {"sent", message.sent}};
  const bool to_agent = agent_switch_.contains(message.dst);
  if (to_agent && failed_.contains(message.dst)) {
    detail["status"] = "DeliveryDropped";
    log_.append(now_, EventKind::MessageDeliver, message.dst, std::move(detail));
    return;
  }
  log_.append(now_, EventKind::MessageDeliver, message.dst, std::move(detail));
  if (to_agent) {
    react(message);
  } else {
    controller_->on_message(message);
  }
}

// Switch-agent reactions.
void Simulation::react(const Message& message) {
  const std::string& agent = message.dst;
  const std::string& sw = agent_switch_.at(agent);
  const auto& p = message.payload;
  auto reply = [&](const std::string& to, MessageKind kind, Payload body) {
    Message m;
    m.src = agent;
    m.dst = to;
    m.kind = kind;
    m.payload = std::move(body);
    send(std::move(m));
  };

  switch (message.kind) {
    case MessageKind::Query: {
      const auto& ied = ieds_.at(sw);
      Payload body{{"re", p.at("id")}, {"switch", sw}, {"detected", ied.latched()}};
      if (ied.latched_at()) body["at"] = *ied.latched_at();
      reply(message.src, MessageKind::Reply, std::move(body));
      break;
    }
    case MessageKind::Command: {
      const auto position = grid::parse_position(p.value("position", ""));
      if (!position) throw std::invalid_argument("command without a valid position");
      set_position(sw, *position, "command", agent);
      if (!violations_.empty()) break;
      reply(message.src, MessageKind::Ack, {{"re", p.at("id")}, {"switch", sw}, {"position", grid::to_string(*position)}});
      break;
    }
    case MessageKind::Request: {
      // Relay toward the source one switch at a time; the zone answers the team.
      const auto path = p.value("path", std::vector<std::string>{});
      const auto hop = p.value("hop", std::size_t{0}) + 1;
      Payload fwd = p;
      fwd["hop"] = hop;
      if (hop < path.size()) {
        const auto next = controller_->agent_for(path[hop]);
        if (next) reply(*next, MessageKind::Request, std::move(fwd));
      } else {
        reply(p.value("source", ""), MessageKind::Request, std::move(fwd));
      }
      break;
    }
    case MessageKind::Reset:
      ieds_.at(sw).reset();
      break;
    default:
      break;
  }
}

void Simulation::sample() {
  const auto carrying = fault_current_switches();
  const auto e = grid::energization(*topology_, states_);
  // Currents are fixed for the whole sampling pass.
  std::map<std::string, double> amps;
  for (std::size_t i = 0; i < topology_->switches().size(); ++i) {
    const auto& sw = topology_->switches()[i];
    const double threshold = ieds_.at(sw.id).config().threshold_a;
    double a = 0.0;
    if (carrying.contains(sw.id)) {
      a = config_.fault_current_factor * threshold;
    } else if (states_.closed(sw.id) &&
               (e.energized(topology_->end_index(i, 0)) || e.energized(topology_->end_index(i, 1)))) {
      a = config_.load_current_factor * threshold;
    }
    amps[sw.id] = a;
  }

  for (const auto& sw : topology_->switches()) {
    const auto agent = host_agent(sw.id);
    if (!agent) continue;
    auto& ied = ieds_.at(sw.id);
    if (now_ % ied.config().sampling_period != 0) continue;
    const double a = amps.at(sw.id);
    const auto out = ied.step(a, now_);
    if (!out.sampled) continue;
    log_.append(now_, EventKind::Sample, sw.id, {{"agent", *agent}, {"amp", a}, {"pickup", out.pickup}});
    if (!out.open_command) continue;
    Payload updates = Payload::object();
    for (const auto& u : out.updates) updates[u.path] = u.value;
    log_.append(now_, EventKind::Trip, sw.id, {{"agent", *agent}, {"amp", a}, {"updates", std::move(updates)}});
    log_.append(now_, EventKind::Command, sw.id,
                {{"node", "CSWI1"}, {"position", "Open"}, {"operate_at", *out.operate_at}});
    if (*out.operate_at <= now_) {
      set_position(sw.id, grid::Position::Open, "protection", *agent);
      controller_->on_trip(sw.id, *agent, now_);
    } else {
      scheduled_.push_back(Scheduled{*out.operate_at, sw.id, *agent});
    }
    if (!violations_.empty()) return;
  }
}

void Simulation::operate_scheduled() {
  std::vector<Scheduled> due;
  auto split = std::stable_partition(scheduled_.begin(), scheduled_.end(),
                                     [this](const Scheduled& s) { return s.at > now_; });
  due.assign(split, scheduled_.end());
  scheduled_.erase(split, scheduled_.end());
  for (const auto& s : due) {
    set_position(s.switch_id, grid::Position::Open, "protection", s.agent);
    controller_->on_trip(s.switch_id, s.agent, now_);
    if (!violations_.empty()) return;
  }
}

void Simulation::set_position(const std::string& switch_id, grid::Position position, const std::string& cause,
                              const std::string& agent) {
  auto r = grid::apply_action(*topology_, states_, switch_id, position);
  states_ = std::move(r.states);
  ieds_.at(switch_id).set_position(position == grid::Position::Open);
  Payload detail{{"from", grid::to_string(r.record.from)},
                 {"to", grid::to_string(r.record.to)},
                 {"cause", cause},
                 {"agent", agent},
                 {"radial", r.record.radial}};
  if (r.record.noop) detail["noop"] = true;
  if (!r.record.radial) detail["violation"] = "radiality";
  log_.append(now_, EventKind::PositionChanged, switch_id, std::move(detail));
  if (!r.record.radial) violation("t=" + std::to_string(now_) + ": closing loop at " + switch_id);
}

void Simulation::check_safety() {
  const auto e = grid::energization(*topology_, states_);
  for (const auto& source : controller_->ledger().overcommitted(e)) {
    violation("t=" + std::to_string(now_) + ": capacity exceeded at " + source);
  }
  const auto served = grid::served_demand(*topology_, e);
  for (const auto& z : topology_->sources()) {
    if (served.at(z.id) > z.capacity_kw) {
      violation("t=" + std::to_string(now_) + ": " + z.id + " serves " + std::to_string(served.at(z.id)) +
                " kW over capacity " + std::to_string(z.capacity_kw));
    }
  }
  if (controller_->isolation_complete()) {
    std::set<std::string> dead = controller_->fault_region();
    dead.insert(faulted_.begin(), faulted_.end());
    for (const auto& seg : dead) {
      if (e.energized(topology_->segment_index(seg))) {
        violation("t=" + std::to_string(now_) + ": faulted segment " + seg + " energized after isolation");
      }
    }
  }
}

void Simulation::violation(const std::string& text) {
  if (std::find(violations_.begin(), violations_.end(), text) == violations_.end()) violations_.push_back(text);
}

RunResult Simulation::result() const {
  RunResult r;
  r.log = log_;
  r.report = controller_->report();
  r.report.violations = violations_;
  r.exit_code = flisr::exit_code(r.report);
  r.ticks = ticks_;
  return r;
}

RunResult run(const grid::Topology& topology, const flisr::Deployment& deployment, const Scenario& scenario,
              const SimConfig& config) {
  Simulation s(topology, deployment, scenario, config);
  while (s.tick()) {
  }
  return s.result();
}

}  // namespace gridteam::sim
