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

#include "gridteam/flisr/controller.hpp"

#include <algorithm>

#include "gridteam/grid/energization.hpp"

namespace gridteam::flisr {

namespace {

using bdi::GoalState;
using bdi::ProcessNode;
using Json = nlohmann::json;
using sim::MessageKind;
using sim::Payload;

const std::string kRestorationKey = "restoration";

std::string unit_role(const std::string& switch_id) { return "unit:" + switch_id; }

std::string isolation_key(const std::string& team) { return "isolation:" + team; }

std::shared_ptr<const bdi::ProcessModel> compile(const ProcessNode& root) {
  return std::make_shared<const bdi::ProcessModel>(root);
}

Payload json_list(const std::vector<std::string>& items) {
  Payload out = Payload::array();
  for (const auto& s : items) out.push_back(s);
  return out;
}

Payload json_list(const std::set<std::string>& items) {
  return json_list(std::vector<std::string>(items.begin(), items.end()));
}

}  // namespace

Controller::Controller(const grid::Topology& topology, Deployment deployment, Environment& env)
    : topology_(&topology), deployment_(std::move(deployment)), env_(&env), ledger_(topology) {
  check_deployment(topology, deployment_);

  std::set<std::string> team_ids;
  for (const auto& t : deployment_.teams) team_ids.insert(t.id);
  for (const auto& a : deployment_.agents) {
    holarchy_.add_performer({a.id, a.capabilities});
    agent_switch_[a.id] = a.controls;
  }
  for (const auto& t : deployment_.teams) {
    teams::Team team{t.id, {}};
    for (const auto& m : t.members) {
      team.members.push_back(team_ids.contains(m) ? teams::MemberRef::team(m) : teams::MemberRef::performer(m));
    }
    holarchy_.add_team(std::move(team));
  }
  holarchy_.validate();
  root_ = holarchy_.root();

  // Feeder teams look after the CB and ROS switches their members control.
  // The breaker role is required; a feeder can work around a lost sectionalizer.
  for (const auto& team : holarchy_.team_order()) {
    if (team == root_) continue;
    std::set<std::string> controlled;
    for (const auto& agent : holarchy_.candidates(team)) controlled.insert(agent_switch_.at(agent));
    std::vector<teams::Role> roles;
    for (const auto& sw : topology.switches()) {
      if (!controlled.contains(sw.id) || sw.kind == grid::SwitchKind::TIE) continue;
      const bool breaker = sw.kind == grid::SwitchKind::CB;
      roles.push_back({unit_role(sw.id), {"control:" + sw.id}, breaker ? 1u : 0u, 1, !breaker});
    }
    if (roles.empty()) continue;
    try {
      isolation_tts_[team] = teams::form_task_team(holarchy_, team, roles);
    } catch (const teams::UnfillableRole&) {
      teams::TaskTeam broken;
      broken.parent_team = team;
      broken.roles = roles;
      broken.status = teams::TaskTeamStatus::Broken;
      isolation_tts_[team] = broken;
    }
  }

  std::vector<teams::Role> roles;
  for (const auto& sw : topology.switches()) {
    roles.push_back({unit_role(sw.id), {"control:" + sw.id}, 0, 1, true});
  }
  restoration_tt_ = teams::form_task_team(holarchy_, root_, roles);

  root_handle_ = executor_.add(compile(flisr_model()));
}

// ---------------------------------------------------------------------------
// Models

bdi::ProcessNode Controller::flisr_model() {
  std::vector<ProcessNode> monitors;
  for (const auto& a : deployment_.agents) {
    monitors.push_back(ProcessNode::task(
        "monitor:" + a.id,
        bdi::Behavior{[this](bdi::TaskCall&) { return trips_.empty() ? GoalState::Executing : GoalState::Passed; },
                      nullptr}));
  }

  auto isolation = ProcessNode::task(
      "fault-isolation",
      bdi::Behavior{[this](bdi::TaskCall& c) { return delegate_isolation(c); },
                    [this](const bdi::DataContext&) {
                      return isolation_handle_ && executor_.instance(*isolation_handle_).finished();
                    }});
  auto restore = ProcessNode::task(
      "restore-loads",
      bdi::Behavior{[this](bdi::TaskCall& c) { return restore_loads(c); },
                    [this](const bdi::DataContext&) {
                      return std::all_of(unit_handles_.begin(), unit_handles_.end(),
                                         [this](auto h) { return executor_.instance(h).finished(); });
                    }});
  auto execute = ProcessNode::task(
      "execute-restoration",
      bdi::Behavior{[this](bdi::TaskCall& c) { return execute_restoration(c); },
                    [this](const bdi::DataContext& ctx) { return waits_ready(ctx); }});
  auto reset = ProcessNode::task(
      "reset-latches", bdi::Behavior{[this](bdi::TaskCall& c) { return reset_latches(c); }, nullptr});

  return ProcessNode::sequence(
      "flisr", {ProcessNode::parallel("fault-detection", std::move(monitors)),
                ProcessNode::sequence(
                    "fault-resolution",
                    {std::move(isolation),
                     ProcessNode::sequence("fault-restoration",
                                           {std::move(restore), std::move(execute), std::move(reset)})})});
}

bdi::ProcessNode Controller::isolation_model(const std::string& team) {
  auto waiting = [this](const bdi::DataContext& ctx) { return waits_ready(ctx); };
  auto query = ProcessNode::task(
      "query-detection:" + team,
      bdi::Behavior{[this, team](bdi::TaskCall& c) { return query_detection(c, team); }, waiting});
  auto locate_task = ProcessNode::task(
      "locate:" + team, bdi::Behavior{[this, team](bdi::TaskCall& c) { return locate(c, team); }, nullptr});
  auto isolate_task = ProcessNode::task(
      "isolate:" + team, bdi::Behavior{[this, team](bdi::TaskCall& c) { return isolate(c, team); }, waiting});
  auto hold = ProcessNode::task(
      "hold-at-breaker:" + team,
      bdi::Behavior{[this, team](bdi::TaskCall& c) { return hold_at_breaker(c, team); }, nullptr});

  auto usable = [this, team](const bdi::DataContext&) {
    auto it = isolation_tts_.find(team);
    return it != isolation_tts_.end() && it->second.status != teams::TaskTeamStatus::Broken;
  };
  return ProcessNode::choice(
      "fault-isolation:" + team,
      {ProcessNode::sequence("locate-and-isolate:" + team,
                             {std::move(query), std::move(locate_task), std::move(isolate_task)})
           .when(usable),
       std::move(hold)});
}

bdi::ProcessNode Controller::unit_model(const RestorationUnit& unit) {
  const std::string name = unit.name();
  std::vector<ProcessNode> plans;
  for (std::size_t k = 0; k < unit.routes.size(); ++k) {
    const std::string tag = name + ":" + std::to_string(k);
    auto propose = ProcessNode::task(
        "propose:" + tag,
        bdi::Behavior{[this, name, k](bdi::TaskCall& c) { return propose_route(c, name, k); }, nullptr});
    auto wait = ProcessNode::task(
        "await-grant:" + tag,
        bdi::Behavior{[this, name](bdi::TaskCall& c) { return await_grant(c, name); },
                      [this](const bdi::DataContext& ctx) { return waits_ready(ctx); }});
    const auto path = unit.routes[k].path;
    plans.push_back(ProcessNode::sequence("route:" + tag, {std::move(propose), std::move(wait)})
                        .when([this, path](const bdi::DataContext&) {
                          return std::all_of(path.begin(), path.end(),
                                             [this](const std::string& sw) { return agent_for(sw).has_value(); });
                        }));
  }
  return ProcessNode::choice("restore:" + name, std::move(plans));
}

// ---------------------------------------------------------------------------
// Inputs

void Controller::on_trip(const std::string& switch_id, const std::string& agent, std::int64_t tick) {
  trips_.push_back(Trip{switch_id, agent, tick});
}

void Controller::on_message(const sim::Message& message) {
  if (is_zone(message.dst)) {
    if (message.kind == MessageKind::Request) handle_zone_request(message);
    return;
  }
  if (message.payload.contains("re")) responses_[message.payload["re"].get<std::uint64_t>()] = message;
}

void Controller::on_agent_failed(const std::string& agent) {
  if (!holarchy_.has_performer(agent)) return;
  holarchy_.mark_failed(agent);
  pending_failures_.push_back(agent);
}

bool Controller::agent_alive(const std::string& agent) const {
  return holarchy_.has_performer(agent) && holarchy_.performer(agent).alive();
}

void Controller::reform() {
  for (const auto& agent : pending_failures_) {
    auto apply = [&](const std::string& key, const std::string& team, teams::TaskTeam& tt) {
      if (!tt.binds(agent)) return;
      const auto r = teams::reform_task_team(holarchy_, tt, agent);
      tt = r.team;
      Payload detail{{"task_team", key}, {"role", r.slot.role}, {"failed", agent}};
      if (r.replacement) detail["replacement"] = *r.replacement;
      detail["status"] = teams::to_string(tt.status);
      const char* name = r.action == teams::ReformAction::Rebound   ? "TaskTeamReformed"
                         : r.action == teams::ReformAction::Removed ? "TaskTeamDegraded"
                                                                    : "TaskTeamBroken";
      milestone(team, name, std::move(detail));
    };
    for (auto& [team, tt] : isolation_tts_) apply(isolation_key(team), team, tt);
    apply(kRestorationKey, root_, restoration_tt_);
  }
  pending_failures_.clear();
}

std::size_t Controller::step() {
  const std::size_t n = executor_.step();
  if (!announced_ && finished()) {
    announced_ = true;
    ledger_.clear();
    milestone(root_, "FlisrFinished", {{"goal_state", bdi::to_string(*goal_state())}});
  }
  return n;
}

bool Controller::finished() const { return executor_.instance(root_handle_).finished(); }

std::optional<bdi::GoalState> Controller::goal_state() const {
  return executor_.instance(root_handle_).root_status();
}

const teams::TaskTeam* Controller::isolation_team(const std::string& team) const {
  auto it = isolation_tts_.find(team);
  return it == isolation_tts_.end() ? nullptr : &it->second;
}

std::optional<std::string> Controller::agent_for(const std::string& switch_id) const {
  return bound_agent(kRestorationKey, switch_id);
}

std::size_t Controller::attempts(const std::string& unit) const {
  auto it = units_.find(unit);
  return it == units_.end() ? 0 : it->second.attempts;
}

// ---------------------------------------------------------------------------
// Plumbing

std::uint64_t Controller::send(const std::string& from, const std::string& to, MessageKind kind, Payload payload) {
  const std::uint64_t id = next_id_++;
  Payload p{{"id", id}};
  for (auto& [k, v] : payload.items()) p[k] = v;
  sim::Message m;
  m.src = from;
  m.dst = to;
  m.kind = kind;
  m.payload = std::move(p);
  env_->send(std::move(m));
  return id;
}

void Controller::await(bdi::DataContext& ctx, std::uint64_t id, std::int64_t deadline, const std::string& team_tt,
                       const std::string& switch_id, const std::string& agent) {
  auto& waits = ctx["waits"];
  if (!waits.is_array()) waits = Json::array();
  waits.push_back({{"id", id}, {"deadline", deadline}, {"tt", team_tt}, {"switch", switch_id}, {"agent", agent}});
}

bool Controller::waits_ready(const bdi::DataContext& ctx) const {
  if (!ctx.contains("waits")) return true;
  const auto& waits = ctx.at("waits");
  if (waits.empty()) return true;
  for (const auto& w : waits) {
    if (responses_.contains(w["id"].get<std::uint64_t>())) return true;
    if (env_->now() >= w["deadline"].get<std::int64_t>()) return true;
    const auto tt = w["tt"].get<std::string>();
    if (!tt.empty() && bound_agent(tt, w["switch"].get<std::string>()) != w["agent"].get<std::string>()) {
      return true;
    }
  }
  return false;
}

const teams::TaskTeam* Controller::task_team(const std::string& key) const {
  if (key == kRestorationKey) return &restoration_tt_;
  const std::string prefix = "isolation:";
  if (key.rfind(prefix, 0) == 0) {
    auto it = isolation_tts_.find(key.substr(prefix.size()));
    if (it != isolation_tts_.end()) return &it->second;
  }
  return nullptr;
}

std::optional<std::string> Controller::bound_agent(const std::string& team_tt, const std::string& switch_id) const {
  const teams::TaskTeam* tt = task_team(team_tt);
  if (tt == nullptr) return std::nullopt;
  auto agent = tt->performer_for(unit_role(switch_id));
  if (!agent || !holarchy_.performer(*agent).alive()) return std::nullopt;
  return agent;
}

void Controller::milestone(const std::string& actor, const std::string& name, Payload detail) {
  timeline_.push_back(MilestoneRecord{env_->now(), actor, name, detail});
  env_->milestone(actor, name, std::move(detail));
}

void Controller::handle_zone_request(const sim::Message& message) {
  const auto& p = message.payload;
  RestorationRequest req;
  req.load = p.value("load", "");
  req.loads = p.value("loads", std::vector<std::string>{});
  req.demand_kw = p.value("demand_kw", std::int64_t{0});
  req.route.source = message.dst;
  req.route.path = p.value("path", std::vector<std::string>{});
  req.team = p.value("team", root_);
  const auto decision = ledger_.grant(req, grid::energization(*topology_, env_->states()));
  send(message.dst, req.team, decision.granted ? MessageKind::Grant : MessageKind::Deny,
       {{"re", p["id"]},
        {"load", req.load},
        {"source", message.dst},
        {"granted", decision.granted},
        {"reason", decision.reason},
        {"remaining_kw", decision.remaining_kw}});
}

// ---------------------------------------------------------------------------
// Behaviours: isolation

bdi::GoalState Controller::delegate_isolation(bdi::TaskCall& call) {
  if (!call.scratch.contains("delegated")) {
    call.scratch.set("delegated", true);
    const Trip& trip = trips_.front();
    isolating_team_ = holarchy_.parent_of(trip.agent).value_or(root_);
    milestone(root_, "FaultDetected", {{"switch", trip.switch_id}, {"tick", trip.tick}});
    milestone(root_, "IsolationDelegated", {{"team", isolating_team_}});
    bdi::DataContext ctx;
    ctx.set("team", isolating_team_);
    ctx.set("trip_switch", trip.switch_id);
    ctx.set("trip_tick", trip.tick);
    isolation_handle_ = executor_.add(compile(isolation_model(isolating_team_)), std::move(ctx));
  }
  const auto& inst = executor_.instance(*isolation_handle_);
  if (!inst.finished()) return GoalState::Blocked;
  if (inst.root_status() != GoalState::Passed) return GoalState::Failed;
  isolation_done_ = true;
  return GoalState::Passed;
}

bdi::GoalState Controller::query_detection(bdi::TaskCall& call, const std::string& team) {
  auto& ctx = call.context;
  const std::string key = isolation_key(team);
  const std::int64_t timeout = 2 * env_->latency() + 2;
  if (!call.scratch.contains("sent")) {
    call.scratch.set("sent", true);
    ctx.set("waits", Json::array());
    ctx.set("replies", 0);
    snapshot_.clear();
    const auto trip_switch = ctx.at("trip_switch").get<std::string>();
    snapshot_[trip_switch] = grid::Detection{true, ctx.at("trip_tick").get<std::int64_t>()};
    int asked = 0;
    for (const auto& role : isolation_tts_.at(team).roles) {
      const std::string sw = role.name.substr(unit_role("").size());
      if (sw == trip_switch) continue;
      const auto agent = bound_agent(key, sw);
      if (!agent) continue;
      const auto id = send(team, *agent, MessageKind::Query, {{"switch", sw}});
      await(ctx, id, env_->now() + timeout, key, sw, *agent);
      ++asked;
    }
    ctx.set("asked", asked);
  }

  Json still = Json::array();
  int replies = ctx.at("replies").get<int>();
  int asked = ctx.at("asked").get<int>();
  for (const auto& w : ctx.at("waits")) {
    const auto id = w["id"].get<std::uint64_t>();
    const auto sw = w["switch"].get<std::string>();
    if (auto it = responses_.find(id); it != responses_.end()) {
      const auto& p = it->second.payload;
      snapshot_[sw] = grid::Detection{p.value("detected", false), p.value("at", std::int64_t{0})};
      ++replies;
      responses_.erase(it);
      continue;
    }
    const auto current = bound_agent(key, sw);
    if (current != w["agent"].get<std::string>()) {
      if (current) {
        const auto again = send(team, *current, MessageKind::Query, {{"switch", sw}});
        Json n = w;
        n["id"] = again;
        n["agent"] = *current;
        n["deadline"] = env_->now() + timeout;
        still.push_back(std::move(n));
        ++asked;
      }
      continue;
    }
    if (env_->now() >= w["deadline"].get<std::int64_t>()) continue;  // entry stays missing
    still.push_back(w);
  }
  ctx.set("waits", still);
  ctx.set("replies", replies);
  ctx.set("asked", asked);
  if (!still.empty()) return GoalState::Blocked;

  if (asked > 0 && replies == 0) {
    milestone(team, "QueryFailed", {{"asked", asked}});
    return GoalState::Failed;
  }
  Payload snap = Payload::object();
  for (const auto& [sw, d] : snapshot_) snap[sw] = d.detected;
  milestone(team, "DetectionSnapshot", {{"snapshot", std::move(snap)}});
  return GoalState::Passed;
}

bdi::GoalState Controller::locate(bdi::TaskCall&, const std::string& team) {
  std::optional<grid::FaultSegment> found;
  try {
    found = grid::locate_segment(*topology_, snapshot_);
  } catch (const grid::ContradictoryDetections& e) {
    milestone(team, "LocateFailed", {{"reason", e.what()}});
    return GoalState::Failed;
  }
  if (!found) {
    milestone(team, "LocateFailed", {{"reason", "no switch reports fault current"}});
    return GoalState::Failed;
  }
  fault_ = *found;
  region_ = grid::fault_region(*topology_, *fault_);
  milestone(team, "FaultLocated",
            {{"upstream", fault_->upstream}, {"downstream", json_list(fault_->downstream)}, {"region", json_list(region_)}});
  return GoalState::Passed;
}

bdi::GoalState Controller::isolate(bdi::TaskCall& call, const std::string& team) {
  auto& ctx = call.context;
  const std::string key = isolation_key(team);
  const std::int64_t timeout = 2 * env_->latency() + 2;
  if (!call.scratch.contains("sent")) {
    call.scratch.set("sent", true);
    ctx.set("waits", Json::array());
    for (const auto& sw : fault_->downstream) {
      const auto agent = bound_agent(key, sw);
      if (!agent) {
        milestone(team, "IsolationFailed", {{"switch", sw}, {"reason", "no live agent"}});
        return GoalState::Failed;
      }
      const auto id = send(team, *agent, MessageKind::Command, {{"switch", sw}, {"position", "Open"}});
      await(ctx, id, env_->now() + timeout, key, sw, *agent);
    }
  }

  Json still = Json::array();
  for (const auto& w : ctx.at("waits")) {
    const auto id = w["id"].get<std::uint64_t>();
    const auto sw = w["switch"].get<std::string>();
    if (auto it = responses_.find(id); it != responses_.end()) {
      responses_.erase(it);
      isolation_actions_.push_back(SwitchAction{sw, grid::Position::Open, env_->now()});
      continue;
    }
    const auto current = bound_agent(key, sw);
    if (current != w["agent"].get<std::string>()) {
      if (!current) {
        milestone(team, "IsolationFailed", {{"switch", sw}, {"reason", "no live agent"}});
        return GoalState::Failed;
      }
      const auto again = send(team, *current, MessageKind::Command, {{"switch", sw}, {"position", "Open"}});
      Json n = w;
      n["id"] = again;
      n["agent"] = *current;
      n["deadline"] = env_->now() + timeout;
      still.push_back(std::move(n));
      continue;
    }
    if (env_->now() >= w["deadline"].get<std::int64_t>()) {
      milestone(team, "IsolationFailed", {{"switch", sw}, {"reason", "command not acknowledged"}});
      return GoalState::Failed;
    }
    still.push_back(w);
  }
  ctx.set("waits", still);
  if (!still.empty()) return GoalState::Blocked;

  std::vector<std::string> opened;
  for (const auto& a : isolation_actions_) opened.push_back(a.switch_id);
  milestone(team, "IsolationComplete", {{"opened", json_list(opened)}});
  return GoalState::Passed;
}

bdi::GoalState Controller::hold_at_breaker(bdi::TaskCall& call, const std::string& team) {
  const auto trip_switch = call.context.at("trip_switch").get<std::string>();
  fault_.reset();
  held_at_breaker_ = true;
  region_ = grid::fault_region(*topology_, grid::FaultSegment{trip_switch, {}});
  milestone(team, "HoldAtBreaker", {{"switch", trip_switch}, {"region", json_list(region_)}});
  return GoalState::Passed;
}

// ---------------------------------------------------------------------------
// Behaviours: restoration

bdi::GoalState Controller::restore_loads(bdi::TaskCall& call) {
  if (!call.scratch.contains("queue")) {
    planner_.emplace(*topology_, env_->states(), region_);
    std::vector<std::string> queue;
    for (const auto& unit : planner_->units()) {
      unit_order_.push_back(unit.name());
      auto& rec = units_[unit.name()];
      if (unit.routes.empty()) {
        rec.reason = "no restoration route";
      } else {
        queue.push_back(unit.name());
      }
    }
    milestone(root_, "RestorationStarted", {{"units", json_list(unit_order_)}});
    call.scratch.set("queue", queue);
    call.scratch.set("next", 0);
  }

  // One restoration goal is started per slice, in processing order.
  const auto queue = call.scratch.at("queue").get<std::vector<std::string>>();
  const auto next = call.scratch.at("next").get<std::size_t>();
  if (next < queue.size()) {
    bdi::DataContext ctx;
    ctx.set("unit", queue[next]);
    ctx.set("waits", Json::array());
    unit_handles_.push_back(executor_.add(compile(unit_model(planner_->unit(queue[next]))), std::move(ctx)));
    call.scratch.set("next", next + 1);
    if (next + 1 < queue.size()) return GoalState::Executing;
  }
  const bool done = std::all_of(unit_handles_.begin(), unit_handles_.end(),
                                [this](auto h) { return executor_.instance(h).finished(); });
  if (!done) return GoalState::Blocked;
  for (auto h : unit_handles_) {
    const auto& inst = executor_.instance(h);
    if (inst.root_status() == GoalState::Passed) continue;
    const auto unit = inst.context().at("unit").get<std::string>();
    milestone(root_, "RestoreFailed",
              {{"unit", unit}, {"attempts", units_.at(unit).attempts}, {"routes", planner_->unit(unit).routes.size()}});
  }
  return GoalState::Passed;
}

bdi::GoalState Controller::propose_route(bdi::TaskCall& call, const std::string& unit, std::size_t k) {
  auto& rec = units_[unit];
  ++rec.attempts;
  call.context.set("waits", Json::array());
  const auto& u = planner_->unit(unit);
  const auto& route = u.routes[k];
  const Payload route_json{{"unit", unit}, {"source", route.source}, {"path", json_list(route.path)}};

  auto adoption = planner_->propose(u, route, [this](const std::string& sw) { return agent_for(sw).has_value(); });
  const auto first_hop = agent_for(route.path.front());
  if (!adoption || !first_hop) {
    if (adoption) planner_->withdraw(*adoption);
    rec.reason = "no feasible switching for route " + std::to_string(k);
    milestone(root_, "RouteInfeasible", route_json);
    return GoalState::Failed;
  }
  rec.pending = adoption;
  const auto req = planner_->request_for(*adoption, root_);
  const auto id = send(root_, *first_hop, MessageKind::Request,
                       {{"load", req.load},
                        {"loads", json_list(req.loads)},
                        {"demand_kw", req.demand_kw},
                        {"source", route.source},
                        {"path", json_list(route.path)},
                        {"hop", 0},
                        {"team", root_}});
  const auto hops = static_cast<std::int64_t>(route.path.size()) + 2;
  await(call.context, id, env_->now() + hops * env_->latency() + 2);
  Payload detail = route_json;
  detail["closes"] = json_list(adoption->closes);
  detail["opens"] = json_list(adoption->opens);
  milestone(root_, "RouteProposed", std::move(detail));
  return GoalState::Passed;
}

bdi::GoalState Controller::await_grant(bdi::TaskCall& call, const std::string& unit) {
  auto& rec = units_[unit];
  const auto& w = call.context.at("waits").at(0);
  const auto id = w["id"].get<std::uint64_t>();
  const Payload who{{"unit", unit}, {"source", rec.pending->route.source}};
  if (auto it = responses_.find(id); it != responses_.end()) {
    const auto msg = it->second;
    responses_.erase(it);
    const auto& p = msg.payload;
    RestorationGrant grant{msg.kind == MessageKind::Grant, p.value("reason", ""),
                           p.value("remaining_kw", std::int64_t{0})};
    rec.grant = grant;
    if (grant.granted) {
      rec.adopted = rec.pending;
      rec.pending.reset();
      rec.reason.clear();
      milestone(root_, "RouteGranted", who);
      return GoalState::Passed;
    }
    planner_->withdraw(*rec.pending);
    rec.pending.reset();
    rec.reason = grant.reason;
    Payload detail = who;
    detail["reason"] = grant.reason;
    milestone(root_, "RouteDenied", std::move(detail));
    return GoalState::Failed;
  }
  if (env_->now() >= w["deadline"].get<std::int64_t>()) {
    planner_->withdraw(*rec.pending);
    rec.pending.reset();
    rec.reason = "restoration request timed out";
    milestone(root_, "RouteTimedOut", who);
    return GoalState::Failed;
  }
  return GoalState::Blocked;
}

bdi::GoalState Controller::execute_restoration(bdi::TaskCall& call) {
  auto& ctx = call.context;
  const std::int64_t timeout = 2 * env_->latency() + 2;
  if (!call.scratch.contains("actions")) {
    Json actions = Json::array();
    Payload shown = Payload::array();
    if (planner_) {
      for (const auto& a : planner_->actions()) {
        actions.push_back({{"switch", a.switch_id}, {"position", grid::to_string(a.position)}});
        shown.push_back({{"switch", a.switch_id}, {"position", grid::to_string(a.position)}});
      }
    }
    call.scratch.set("actions", actions);
    call.scratch.set("next", 0);
    ctx.set("waits", Json::array());
    milestone(root_, "RestorationPlanned", {{"actions", std::move(shown)}});
  }

  const auto& actions = call.scratch.at("actions");
  auto next = call.scratch.at("next").get<std::size_t>();
  while (next < actions.size()) {
    const auto sw = actions[next]["switch"].get<std::string>();
    const auto pos_text = actions[next]["position"].get<std::string>();
    const auto pos = *grid::parse_position(pos_text);
    auto& waits = ctx["waits"];
    if (waits.empty()) {
      if (env_->states().at(sw) == pos) {
        call.scratch.set("next", ++next);
        continue;
      }
      const auto agent = agent_for(sw);
      if (!agent) {
        milestone(root_, "RestorationFailed", {{"switch", sw}, {"reason", "no live agent"}});
        return GoalState::Failed;
      }
      const auto id = send(root_, *agent, MessageKind::Command, {{"switch", sw}, {"position", pos_text}});
      await(ctx, id, env_->now() + timeout, kRestorationKey, sw, *agent);
      return GoalState::Blocked;
    }
    const auto w = waits.at(0);
    const auto id = w["id"].get<std::uint64_t>();
    if (auto it = responses_.find(id); it != responses_.end()) {
      responses_.erase(it);
      restoration_actions_.push_back(SwitchAction{sw, pos, env_->now()});
      waits = Json::array();
      call.scratch.set("next", ++next);
      continue;
    }
    const auto current = agent_for(sw);
    if (current != w["agent"].get<std::string>()) {
      waits = Json::array();
      if (!current) {
        milestone(root_, "RestorationFailed", {{"switch", sw}, {"reason", "no live agent"}});
        return GoalState::Failed;
      }
      continue;  // resend to the replacement on the next pass
    }
    if (env_->now() >= w["deadline"].get<std::int64_t>()) {
      milestone(root_, "RestorationFailed", {{"switch", sw}, {"reason", "command not acknowledged"}});
      return GoalState::Failed;
    }
    return GoalState::Blocked;
  }

  std::vector<std::string> restored;
  const auto e = grid::energization(*topology_, env_->states());
  for (const auto& name : unit_order_) {
    for (const auto& load : planner_->unit(name).loads) {
      if (e.load_source.at(load)) restored.push_back(load);
    }
  }
  milestone(root_, "RestorationExecuted", {{"restored", json_list(restored)}});
  return GoalState::Passed;
}

bdi::GoalState Controller::reset_latches(bdi::TaskCall&) {
  for (const auto& a : deployment_.agents) {
    if (agent_alive(a.id)) send(root_, a.id, MessageKind::Reset, Payload::object());
  }
  milestone(root_, "LatchesReset");
  return GoalState::Passed;
}

// ---------------------------------------------------------------------------
// Report

FlisrReport Controller::report() const {
  FlisrReport r;
  const auto state = goal_state();
  r.goal_state = state ? std::string(bdi::to_string(*state)) : "NotStarted";
  if (!trips_.empty()) r.tripped = trips_.front().switch_id;
  r.detection = snapshot_;
  r.fault = fault_;
  r.fault_region = region_;
  r.held_at_breaker = held_at_breaker_;
  r.isolation = isolation_actions_;
  r.restoration_actions = restoration_actions_;
  const auto e = grid::energization(*topology_, env_->states());
  r.energization = e.load_source;
  r.radial = e.radial;
  r.timeline = timeline_;

  bool all_restored = true;
  for (const auto& name : unit_order_) {
    const auto& unit = planner_->unit(name);
    const auto& rec = units_.at(name);
    for (const auto& load : unit.loads) {
      LoadOutcome o;
      o.load = load;
      o.source = e.load_source.at(load);
      o.status = o.source ? "restored" : "unserved";
      if (!o.source) all_restored = false;
      if (rec.adopted) o.path = rec.adopted->route.path;
      if (rec.grant) o.granted = rec.grant->granted;
      if (!o.source) o.reason = rec.reason;
      o.attempts = rec.attempts;
      o.routes = unit.routes.size();
      r.restoration.push_back(std::move(o));
    }
  }
  for (const auto& seg : region_) {
    auto loads = topology_->segments()[topology_->segment_index(seg)].loads;
    std::sort(loads.begin(), loads.end());
    for (const auto& load : loads) {
      LoadOutcome o;
      o.load = load;
      o.status = "isolated";
      o.source = e.load_source.at(load);
      r.restoration.push_back(std::move(o));
    }
  }

  if (trips_.empty()) {
    r.outcome = Outcome::NoFault;
  } else if (!state || !bdi::is_terminal(*state)) {
    r.outcome = Outcome::Incomplete;
  } else if (*state != GoalState::Passed) {
    r.outcome = Outcome::Failed;
  } else {
    r.outcome = all_restored && !held_at_breaker_ ? Outcome::Restored : Outcome::Degraded;
  }
  return r;
}

}  // namespace gridteam::flisr
