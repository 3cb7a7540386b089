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

#include "gridteam/io/scenario_io.hpp"

#include <set>

namespace gridteam::io {

namespace {

using Json = nlohmann::json;

class ScenarioReader {
 public:
  ScenarioReader(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  sim::Scenario read() {
    doc_ = parse_json(text_, file_);
    if (!doc_.is_object()) fail("", "top level must be an object");
    static const std::set<std::string> known{"name", "description", "faults", "agent_failures",
                                             "tick_budget", "seed", "latency"};
    for (const auto& [key, value] : doc_.items()) {
      if (!known.contains(key)) add("/" + key, "unknown field");
    }

    sim::Scenario s;
    if (const Json* faults = array("faults")) {
      for (std::size_t i = 0; i < faults->size(); ++i) {
        const std::string ptr = "/faults/" + std::to_string(i);
        const auto& f = (*faults)[i];
        auto tick = integer(f, ptr, "tick");
        auto segment = string(f, ptr, "segment");
        sim::FaultSpec spec;
        if (f.is_object() && f.contains("type")) {
          if (auto type = string(f, ptr, "type")) spec.type = *type;
        }
        if (!tick || !segment) continue;
        if (*tick < 0) add(ptr + "/tick", "must not be negative");
        spec.tick = *tick;
        spec.segment = *segment;
        s.faults.push_back(std::move(spec));
      }
    }
    if (const Json* failures = array("agent_failures")) {
      for (std::size_t i = 0; i < failures->size(); ++i) {
        const std::string ptr = "/agent_failures/" + std::to_string(i);
        auto tick = integer((*failures)[i], ptr, "tick");
        auto agent = string((*failures)[i], ptr, "agent");
        if (!tick || !agent) continue;
        if (*tick < 0) add(ptr + "/tick", "must not be negative");
        s.agent_failures.push_back(sim::AgentFailureSpec{*tick, *agent});
      }
    }
    if (auto v = optional_integer("tick_budget")) {
      if (*v < 1) add("/tick_budget", "must be at least 1");
      s.tick_budget = *v;
    }
    if (auto v = optional_integer("latency")) {
      if (*v < 1) add("/latency", "must be at least 1");
      s.latency = *v;
    }
    if (auto v = optional_integer("seed")) {
      if (*v < 0) add("/seed", "must not be negative");
      s.seed = static_cast<std::uint64_t>(*v);
    }
    if (!diagnostics_.empty()) throw ConfigError(diagnostics_);
    return s;
  }

 private:
  void add(const std::string& pointer, const std::string& message) {
    diagnostics_.push_back(ConfigDiagnostic{file_, pointer, message, locate_pointer(text_, doc_, pointer), {}});
  }

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) {
    add(pointer, message);
    throw ConfigError(diagnostics_);
  }

  const Json* array(const std::string& key) {
    if (!doc_.contains(key)) return nullptr;
    if (!doc_[key].is_array()) {
      add("/" + key, "must be an array");
      return nullptr;
    }
    return &doc_[key];
  }

  std::optional<std::int64_t> integer(const Json& obj, const std::string& ptr, const std::string& key) {
    if (!obj.is_object()) {
      add(ptr, "must be an object");
      return std::nullopt;
    }
    if (!obj.contains(key)) {
      add(ptr, "missing field '" + key + "'");
      return std::nullopt;
    }
    if (!obj[key].is_number_integer()) {
      add(ptr + "/" + key, "must be an integer");
      return std::nullopt;
    }
    return obj[key].get<std::int64_t>();
  }

  std::optional<std::string> string(const Json& obj, const std::string& ptr, const std::string& key) {
    if (!obj.is_object()) return std::nullopt;
    if (!obj.contains(key)) {
      add(ptr, "missing field '" + key + "'");
      return std::nullopt;
    }
    if (!obj[key].is_string()) {
      add(ptr + "/" + key, "must be a string");
      return std::nullopt;
    }
    return obj[key].get<std::string>();
  }

  std::optional<std::int64_t> optional_integer(const std::string& key) {
    if (!doc_.contains(key)) return std::nullopt;
    if (!doc_[key].is_number_integer()) {
      add("/" + key, "must be an integer");
      return std::nullopt;
    }
    return doc_[key].get<std::int64_t>();
  }

  std::string_view text_;
  std::string file_;
  Json doc_;
  std::vector<ConfigDiagnostic> diagnostics_;
};

}  // namespace

sim::Scenario parse_scenario(std::string_view text, const std::string& file) {
  return ScenarioReader(text, file).read();
}

sim::Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_file(path), path.string());
}

nlohmann::ordered_json to_json(const sim::Scenario& scenario) {
  nlohmann::ordered_json out;
  out["faults"] = nlohmann::ordered_json::array();
  for (const auto& f : scenario.faults) {
    out["faults"].push_back({{"tick", f.tick}, {"segment", f.segment}, {"type", f.type}});
  }
  out["agent_failures"] = nlohmann::ordered_json::array();
  for (const auto& f : scenario.agent_failures) out["agent_failures"].push_back({{"tick", f.tick}, {"agent", f.agent}});
  if (scenario.tick_budget) out["tick_budget"] = *scenario.tick_budget;
  if (scenario.seed) out["seed"] = *scenario.seed;
  if (scenario.latency) out["latency"] = *scenario.latency;
  return out;
}

}  // namespace gridteam::io
