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

#include "gridteam/io/topology_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "gridteam/sim/scenario.hpp"

namespace gridteam::io {

using Json = nlohmann::json;
using OJson = nlohmann::ordered_json;

std::string ConfigDiagnostic::to_string() const {
  std::string out = file;
  if (line) {
    out += ":" + std::to_string(*line);
    if (column) out += ":" + std::to_string(*column);
  }
  out += ": ";
  if (!pointer.empty()) out += pointer + ": ";
  return out + message;
}

namespace {

std::string summary(const std::vector<ConfigDiagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (!out.empty()) out += '\n';
    out += d.to_string();
  }
  return out;
}

std::string escape_token(const std::string& token) {
  std::string out;
  for (char c : token) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

std::string unescape_token(const std::string& token) {
  std::string out;
  for (std::size_t i = 0; i < token.size(); ++i) {
    if (token[i] == '~' && i + 1 < token.size()) {
      out += token[i + 1] == '1' ? '/' : '~';
      ++i;
    } else {
      out += token[i];
    }
  }
  return out;
}

std::size_t skip_ws(std::string_view text, std::size_t pos) {
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r')) {
    ++pos;
  }
  return pos;
}

// Position of `"key":` (or `"key": value` when value is given) at or after pos.
std::optional<std::size_t> find_member(std::string_view text, std::size_t pos, const std::string& key,
                                       const Json* value = nullptr) {
  const std::string quoted = Json(key).dump();
  const std::string rendered = value ? value->dump() : "";
  for (auto at = text.find(quoted, pos); at != std::string_view::npos; at = text.find(quoted, at + 1)) {
    auto p = skip_ws(text, at + quoted.size());
    if (p >= text.size() || text[p] != ':') continue;
    if (value) {
      p = skip_ws(text, p + 1);
      if (text.substr(p, rendered.size()) != rendered) continue;
    }
    return at;
  }
  return std::nullopt;
}

// Reads one topology document, collecting every problem it can find.
class TopologyReader {
 public:
  TopologyReader(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  TopologyDocument read() {
    doc_ = parse_json(text_, file_);
    if (!doc_.is_object()) fail("", "top level must be an object");

    static const std::set<std::string> known{"name",  "description", "sources", "segments", "switches",
                                             "loads", "routes",      "agents",  "teams"};
    for (const auto& [key, value] : doc_.items()) {
      if (!known.contains(key)) add("/" + escape_token(key), "unknown field");
    }

    std::string name = doc_.contains("name") && doc_["name"].is_string() ? doc_["name"].get<std::string>() : "";
    auto segments = read_segments();
    auto sources = read_sources();
    auto switches = read_switches();
    auto loads = read_loads();
    auto routes = read_routes();
    if (!diagnostics_.empty()) throw ConfigError(diagnostics_);

    std::optional<grid::Topology> topology;
    try {
      topology.emplace(std::move(sources), std::move(segments), std::move(switches), std::move(loads),
                       std::move(routes));
    } catch (const std::exception& e) {
      fail("", e.what());
    }

    TopologyDocument out{name, std::move(*topology), {}, {}};
    read_deployment(out);
    if (!diagnostics_.empty()) throw ConfigError(diagnostics_);
    return out;
  }

  const Json& document() const { return doc_; }

 private:
  void add(const std::string& pointer, const std::string& message) {
    diagnostics_.push_back(ConfigDiagnostic{file_, pointer, message, locate_pointer(text_, doc_, pointer), {}});
  }

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) {
    add(pointer, message);
    throw ConfigError(diagnostics_);
  }

  const Json* array(const std::string& key, bool required) {
    if (!doc_.contains(key)) {
      if (required) add("", "missing field '" + key + "'");
      return nullptr;
    }
    if (!doc_[key].is_array()) {
      add("/" + key, "must be an array");
      return nullptr;
    }
    return &doc_[key];
  }

  std::optional<std::string> string_field(const Json& obj, const std::string& ptr, const std::string& key) {
    if (!obj.is_object()) {
      add(ptr, "must be an object");
      return std::nullopt;
    }
    if (!obj.contains(key)) {
      add(ptr, "missing field '" + key + "'");
      return std::nullopt;
    }
    if (!obj[key].is_string() || obj[key].get<std::string>().empty()) {
      add(ptr + "/" + key, "must be a non-empty string");
      return std::nullopt;
    }
    return obj[key].get<std::string>();
  }

  std::optional<std::int64_t> int_field(const Json& obj, const std::string& ptr, const std::string& key) {
    if (!obj.is_object()) return std::nullopt;
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

  std::optional<std::vector<std::string>> string_list(const Json& obj, const std::string& ptr,
                                                      const std::string& key) {
    if (!obj.is_object() || !obj.contains(key)) {
      add(ptr, "missing field '" + key + "'");
      return std::nullopt;
    }
    const auto& v = obj[key];
    if (!v.is_array()) {
      add(ptr + "/" + key, "must be an array of strings");
      return std::nullopt;
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string()) {
        add(ptr + "/" + key + "/" + std::to_string(i), "must be a string");
        return std::nullopt;
      }
      out.push_back(v[i].get<std::string>());
    }
    return out;
  }

  bool unique(std::set<std::string>& seen, const std::string& id, const std::string& ptr) {
    if (seen.insert(id).second) return true;
    add(ptr + "/id", "duplicate id '" + id + "'");
    return false;
  }

  std::vector<grid::Segment> read_segments() {
    std::vector<grid::Segment> out;
    const Json* arr = array("segments", true);
    if (!arr) return out;
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const std::string ptr = "/segments/" + std::to_string(i);
      auto id = string_field((*arr)[i], ptr, "id");
      if (id && unique(segment_ids_, *id, ptr)) out.push_back(grid::Segment{*id, {}});
    }
    return out;
  }

  std::vector<grid::ZoneSubstation> read_sources() {
    std::vector<grid::ZoneSubstation> out;
    const Json* arr = array("sources", true);
    if (!arr) return out;
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const std::string ptr = "/sources/" + std::to_string(i);
      const auto& s = (*arr)[i];
      auto id = string_field(s, ptr, "id");
      auto seg = string_field(s, ptr, "segment");
      auto cap = int_field(s, ptr, "capacity_kw");
      if (!id || !seg || !cap) continue;
      if (!unique(source_ids_, *id, ptr)) continue;
      if (!segment_ids_.contains(*seg)) add(ptr + "/segment", "unknown segment '" + *seg + "'");
      if (*cap < 0) add(ptr + "/capacity_kw", "must not be negative");
      out.push_back(grid::ZoneSubstation{*id, *cap, *seg});
    }
    return out;
  }

  std::vector<grid::SwitchingUnit> read_switches() {
    std::vector<grid::SwitchingUnit> out;
    const Json* arr = array("switches", true);
    if (!arr) return out;
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const std::string ptr = "/switches/" + std::to_string(i);
      const auto& s = (*arr)[i];
      auto id = string_field(s, ptr, "id");
      auto kind_text = string_field(s, ptr, "kind");
      auto normal_text = string_field(s, ptr, "normal");
      auto ends = string_list(s, ptr, "ends");
      if (!id || !kind_text || !normal_text || !ends) continue;
      if (!unique(switch_ids_, *id, ptr)) continue;
      const auto kind = grid::parse_switch_kind(*kind_text);
      const auto normal = grid::parse_position(*normal_text);
      if (!kind) add(ptr + "/kind", "must be one of CB, ROS, TIE");
      if (!normal) add(ptr + "/normal", "must be Open or Closed");
      if (ends->size() != 2) {
        add(ptr + "/ends", "must list exactly two segments");
        continue;
      }
      for (std::size_t e = 0; e < 2; ++e) {
        if (!segment_ids_.contains((*ends)[e])) {
          add(ptr + "/ends/" + std::to_string(e), "unknown segment '" + (*ends)[e] + "'");
        }
      }
      if ((*ends)[0] == (*ends)[1]) add(ptr + "/ends", "both ends on one segment");
      if (kind && normal) out.push_back(grid::SwitchingUnit{*id, *kind, *normal, {(*ends)[0], (*ends)[1]}});
    }
    return out;
  }

  std::vector<grid::Load> read_loads() {
    std::vector<grid::Load> out;
    const Json* arr = array("loads", true);
    if (!arr) return out;
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const std::string ptr = "/loads/" + std::to_string(i);
      const auto& l = (*arr)[i];
      auto id = string_field(l, ptr, "id");
      auto seg = string_field(l, ptr, "segment");
      auto demand = int_field(l, ptr, "demand_kw");
      if (!id || !seg || !demand) continue;
      if (!unique(load_ids_, *id, ptr)) continue;
      if (!segment_ids_.contains(*seg)) add(ptr + "/segment", "unknown segment '" + *seg + "'");
      if (*demand < 0) add(ptr + "/demand_kw", "must not be negative");
      out.push_back(grid::Load{*id, *demand, *seg});
    }
    return out;
  }

  grid::RouteTable read_routes() {
    grid::RouteTable out;
    if (!doc_.contains("routes")) return out;
    const auto& routes = doc_["routes"];
    if (!routes.is_object()) {
      add("/routes", "must be an object keyed by load id");
      return out;
    }
    for (const auto& [load, list] : routes.items()) {
      const std::string lptr = "/routes/" + escape_token(load);
      if (!load_ids_.contains(load)) add(lptr, "unknown load '" + load + "'");
      if (!list.is_array()) {
        add(lptr, "must be an array of routes");
        continue;
      }
      auto& dest = out[load];
      for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string ptr = lptr + "/" + std::to_string(k);
        auto source = string_field(list[k], ptr, "source");
        auto path = string_list(list[k], ptr, "path");
        if (!source || !path) continue;
        if (!source_ids_.contains(*source)) add(ptr + "/source", "unknown source '" + *source + "'");
        if (path->empty()) add(ptr + "/path", "route path is empty");
        for (std::size_t j = 0; j < path->size(); ++j) {
          if (!switch_ids_.contains((*path)[j])) {
            add(ptr + "/path/" + std::to_string(j), "unknown switch '" + (*path)[j] + "'");
          }
        }
        dest.push_back(grid::RestorationRoute{*source, *path});
      }
    }
    return out;
  }

  void read_protection(const Json& p, const std::string& ptr, ied::ProtectionConfig& c) {
    if (!p.is_object()) {
      add(ptr, "must be an object");
      return;
    }
    for (const auto& [key, v] : p.items()) {
      const std::string at = ptr + "/" + escape_token(key);
      if (key == "threshold_a") {
        if (!v.is_number()) add(at, "must be a number");
        else c.threshold_a = v.get<double>();
      } else if (key == "trip_persistence") {
        if (!v.is_number_integer()) add(at, "must be an integer");
        else c.trip_persistence = v.get<int>();
      } else if (key == "operate_delay") {
        if (!v.is_number_integer()) add(at, "must be an integer");
        else c.operate_delay = v.get<std::int64_t>();
      } else if (key == "sampling_period") {
        if (!v.is_number_integer()) add(at, "must be an integer");
        else c.sampling_period = v.get<std::int64_t>();
      } else if (key == "trip_enabled") {
        if (!v.is_boolean()) add(at, "must be true or false");
        else c.trip_enabled = v.get<bool>();
      } else {
        add(at, "unknown protection setting");
      }
    }
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      add(ptr, e.what());
    }
  }

  void read_deployment(TopologyDocument& out) {
    const auto& topology = out.topology;
    const Json* agents = array("agents", false);
    if (agents) {
      std::set<std::string> ids;
      for (std::size_t i = 0; i < agents->size(); ++i) {
        const std::string ptr = "/agents/" + std::to_string(i);
        const auto& a = (*agents)[i];
        auto id = string_field(a, ptr, "id");
        auto controls = string_field(a, ptr, "controls");
        if (!id || !controls) continue;
        if (!unique(ids, *id, ptr)) continue;
        if (!topology.has_switch(*controls)) {
          add(ptr + "/controls", "unknown switch '" + *controls + "'");
          continue;
        }
        flisr::AgentSpec spec{*id, *controls, flisr::switch_capabilities(*controls)};
        if (a.contains("capabilities")) {
          if (auto caps = string_list(a, ptr, "capabilities")) spec.capabilities = {caps->begin(), caps->end()};
        }
        if (a.contains("protection")) {
          if (out.protection.contains(*controls)) {
            add(ptr + "/protection", "protection for switch '" + *controls + "' is already set");
          } else {
            auto c = sim::default_protection(topology.switch_unit(*controls));
            read_protection(a["protection"], ptr + "/protection", c);
            out.protection[*controls] = c;
          }
        }
        out.deployment.agents.push_back(std::move(spec));
      }
    } else {
      out.deployment.agents = flisr::default_agents(topology);
    }

    const Json* teams = array("teams", false);
    if (teams) {
      for (std::size_t i = 0; i < teams->size(); ++i) {
        const std::string ptr = "/teams/" + std::to_string(i);
        auto id = string_field((*teams)[i], ptr, "id");
        auto members = string_list((*teams)[i], ptr, "members");
        if (id && members) out.deployment.teams.push_back(flisr::TeamSpec{*id, *members});
      }
    } else if (!out.deployment.agents.empty()) {
      out.deployment.teams = flisr::default_teams(topology, out.deployment.agents);
    }
    if (!diagnostics_.empty()) return;
    try {
      flisr::check_deployment(topology, out.deployment);
    } catch (const flisr::DeploymentError& e) {
      add(teams ? "/teams" : agents ? "/agents" : "", e.what());
    }
  }

  std::string_view text_;
  std::string file_;
  Json doc_;
  std::vector<ConfigDiagnostic> diagnostics_;
  std::set<std::string> segment_ids_, source_ids_, switch_ids_, load_ids_;
};

}  // namespace

ConfigError::ConfigError(std::vector<ConfigDiagnostic> diagnostics)
    : std::runtime_error(summary(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::optional<std::size_t> locate_pointer(std::string_view text, const Json& doc, const std::string& pointer) {
  if (pointer.empty()) return std::nullopt;
  std::vector<std::string> tokens;
  std::stringstream ss(pointer.substr(1));
  for (std::string t; std::getline(ss, t, '/');) tokens.push_back(unescape_token(t));
  if (pointer.back() == '/') tokens.emplace_back();

  const Json* cur = &doc;
  std::size_t pos = 0;
  for (const auto& token : tokens) {
    if (cur->is_object()) {
      if (!cur->contains(token)) break;
      auto at = find_member(text, pos, token);
      if (!at) return std::nullopt;
      pos = *at;
      cur = &(*cur)[token];
    } else if (cur->is_array()) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(token);
      } catch (const std::exception&) {
        break;
      }
      if (idx >= cur->size()) break;
      const Json& elem = (*cur)[idx];
      std::optional<std::size_t> at;
      if (elem.is_object() && elem.contains("id") && elem["id"].is_string()) {
        at = find_member(text, pos, "id", &elem["id"]);
      } else if (elem.is_object()) {
        for (const auto& [k, v] : elem.items()) {
          if (!v.is_primitive()) continue;
          at = find_member(text, pos, k, &v);
          break;
        }
      } else if (elem.is_primitive()) {
        const std::string rendered = elem.dump();
        // Skip earlier siblings with the same rendering.
        std::size_t from = pos;
        for (std::size_t i = 0; i <= idx; ++i) {
          if ((*cur)[i] != elem) continue;
          auto f = text.find(rendered, from);
          if (f == std::string_view::npos) return std::nullopt;
          at = f;
          from = f + rendered.size();
        }
      }
      if (!at) break;
      pos = *at;
      cur = &elem;
    } else {
      break;
    }
  }
  return line_column(text, pos).first;
}

Json parse_json(std::string_view text, const std::string& file) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, column] = line_column(text, offset);
    std::string message = e.what();
    // Drop the library's "[json.exception.parse_error.101] " prefix.
    if (auto close = message.find("] "); close != std::string::npos) message = message.substr(close + 2);
    throw ConfigError({ConfigDiagnostic{file, "", message, line, column}});
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({ConfigDiagnostic{path.string(), "", "cannot read file", {}, {}}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TopologyDocument parse_topology(std::string_view text, const std::string& file) {
  return TopologyReader(text, file).read();
}

TopologyDocument load_topology(const std::filesystem::path& path) {
  return parse_topology(read_file(path), path.string());
}

std::vector<ConfigDiagnostic> validate_topology(std::string_view text, const std::string& file) {
  std::optional<TopologyDocument> doc;
  try {
    doc.emplace(parse_topology(text, file));
  } catch (const ConfigError& e) {
    return e.diagnostics();
  }
  const Json json = Json::parse(text);
  std::vector<ConfigDiagnostic> out;
  for (const auto& d : doc->topology.check()) {
    out.push_back(ConfigDiagnostic{file, d.where, d.message, locate_pointer(text, json, d.where), {}});
  }
  return out;
}

OJson to_json(const TopologyDocument& doc) {
  const auto& t = doc.topology;
  OJson out;
  out["name"] = doc.name;
  out["sources"] = OJson::array();
  for (const auto& s : t.sources()) {
    out["sources"].push_back({{"id", s.id}, {"segment", s.segment}, {"capacity_kw", s.capacity_kw}});
  }
  out["segments"] = OJson::array();
  for (const auto& s : t.segments()) out["segments"].push_back({{"id", s.id}});
  out["switches"] = OJson::array();
  for (const auto& s : t.switches()) {
    out["switches"].push_back({{"id", s.id},
                               {"kind", grid::to_string(s.kind)},
                               {"normal", grid::to_string(s.normal)},
                               {"ends", {s.ends[0], s.ends[1]}}});
  }
  out["loads"] = OJson::array();
  for (const auto& l : t.loads()) {
    out["loads"].push_back({{"id", l.id}, {"segment", l.segment}, {"demand_kw", l.demand_kw}});
  }
  out["routes"] = OJson::object();
  for (const auto& [load, routes] : t.routes()) {
    auto& list = out["routes"][load] = OJson::array();
    for (const auto& r : routes) list.push_back({{"source", r.source}, {"path", r.path}});
  }
  out["agents"] = OJson::array();
  std::set<std::string> written;
  for (const auto& a : doc.deployment.agents) {
    OJson agent{{"id", a.id}, {"controls", a.controls}};
    if (a.capabilities != flisr::switch_capabilities(a.controls)) agent["capabilities"] = a.capabilities;
    if (auto it = doc.protection.find(a.controls); it != doc.protection.end() && written.insert(a.controls).second) {
      const auto& c = it->second;
      agent["protection"] = {{"threshold_a", c.threshold_a},
                             {"trip_persistence", c.trip_persistence},
                             {"operate_delay", c.operate_delay},
                             {"sampling_period", c.sampling_period},
                             {"trip_enabled", c.trip_enabled}};
    }
    out["agents"].push_back(std::move(agent));
  }
  out["teams"] = OJson::array();
  for (const auto& team : doc.deployment.teams) out["teams"].push_back({{"id", team.id}, {"members", team.members}});
  return out;
}

}  // namespace gridteam::io
