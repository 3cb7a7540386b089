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

#include "gridteam/flisr/report.hpp"

namespace gridteam::flisr {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::NoFault: return "NoFault";
    case Outcome::Restored: return "Restored";
    case Outcome::Degraded: return "Degraded";
    case Outcome::Failed: return "Failed";
    case Outcome::Incomplete: return "Incomplete";
  }
  return "?";
}

const LoadOutcome* FlisrReport::load(std::string_view id) const {
  for (const auto& l : restoration) {
    if (l.load == id) return &l;
  }
  return nullptr;
}

int exit_code(const FlisrReport& report) {
  if (!report.violations.empty()) return 2;
  switch (report.outcome) {
    case Outcome::NoFault:
    case Outcome::Restored:
      return 0;
    case Outcome::Degraded:
    case Outcome::Failed:
    case Outcome::Incomplete:
      return 1;
  }
  return 1;
}

namespace {

using Json = nlohmann::ordered_json;

Json actions_json(const std::vector<SwitchAction>& actions) {
  Json out = Json::array();
  for (const auto& a : actions) {
    out.push_back({{"t", a.t}, {"switch", a.switch_id}, {"position", grid::to_string(a.position)}});
  }
  return out;
}

}  // namespace

nlohmann::ordered_json to_json(const FlisrReport& report) {
  Json j;
  j["outcome"] = to_string(report.outcome);
  j["goal_state"] = report.goal_state;
  j["exit_code"] = exit_code(report);

  Json detection = Json::object();
  if (report.tripped) detection["tripped"] = *report.tripped;
  Json snapshot = Json::object();
  for (const auto& [sw, d] : report.detection) snapshot[sw] = {{"detected", d.detected}, {"at", d.at}};
  detection["snapshot"] = std::move(snapshot);
  j["detection"] = std::move(detection);

  if (report.fault) {
    j["fault_segment"] = {{"upstream", report.fault->upstream},
                          {"downstream", Json(report.fault->downstream)},
                          {"region", Json(report.fault_region)}};
  } else if (report.held_at_breaker) {
    j["fault_segment"] = {{"upstream", report.tripped.value_or("")},
                          {"downstream", Json::array()},
                          {"region", Json(report.fault_region)}};
  } else {
    j["fault_segment"] = nullptr;
  }
  j["isolation"] = {{"held_at_breaker", report.held_at_breaker}, {"actions", actions_json(report.isolation)}};

  Json loads = Json::array();
  for (const auto& l : report.restoration) {
    Json e;
    e["load"] = l.load;
    e["status"] = l.status;
    e["source"] = l.source ? Json(*l.source) : Json(nullptr);
    e["path"] = l.path;
    e["granted"] = l.granted ? Json(*l.granted) : Json(nullptr);
    if (!l.reason.empty()) e["reason"] = l.reason;
    e["attempts"] = l.attempts;
    e["routes"] = l.routes;
    loads.push_back(std::move(e));
  }
  j["restoration"] = {{"actions", actions_json(report.restoration_actions)}, {"loads", std::move(loads)}};

  Json energization = Json::object();
  for (const auto& [load, src] : report.energization) energization[load] = src ? Json(*src) : Json(nullptr);
  j["energization"] = std::move(energization);
  j["radial"] = report.radial;

  Json timeline = Json::array();
  for (const auto& m : report.timeline) {
    timeline.push_back({{"t", m.t}, {"actor", m.actor}, {"milestone", m.name}, {"detail", m.detail}});
  }
  j["timeline"] = std::move(timeline);
  j["violations"] = report.violations;
  return j;
}

}  // namespace gridteam::flisr
