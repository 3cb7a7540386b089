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
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gridteam/flisr/deployment.hpp"
#include "gridteam/grid/topology.hpp"
#include "gridteam/ied/protection.hpp"

namespace gridteam::io {

/// One problem with an input file. `pointer` is a JSON pointer into the
/// document; line and column are 1-based when known.
struct ConfigDiagnostic {
  std::string file;
  std::string pointer;
  std::string message;
  std::optional<std::size_t> line;
  std::optional<std::size_t> column;

  /// "file:line:col: /pointer: message", omitting what is unknown.
  std::string to_string() const;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigDiagnostic> diagnostics);
  const std::vector<ConfigDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<ConfigDiagnostic> diagnostics_;
};

struct TopologyDocument {
  std::string name;
  grid::Topology topology;
  flisr::Deployment deployment;
  std::map<std::string, ied::ProtectionConfig> protection;  // by switch id
};

/// Read a whole file. Throws ConfigError when it cannot be read.
std::string read_file(const std::filesystem::path& path);

/// Parse and build a topology document. Throws ConfigError on syntax,
/// schema or reference problems. Electrical invariants are not checked here.
TopologyDocument parse_topology(std::string_view text, const std::string& file = "<topology>");
TopologyDocument load_topology(const std::filesystem::path& path);

/// Every problem found in a topology file, including the electrical
/// invariants of grid::Topology::check(). Empty means the file is usable.
std::vector<ConfigDiagnostic> validate_topology(std::string_view text, const std::string& file = "<topology>");

nlohmann::ordered_json to_json(const TopologyDocument& doc);

/// 1-based line of the element a JSON pointer names, found by walking the
/// text: object members by key, array elements by their "id" when they have
/// one. nullopt when the walk gets lost.
std::optional<std::size_t> locate_pointer(std::string_view text, const nlohmann::json& doc,
                                          const std::string& pointer);

/// Line and column of a byte offset.
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset);

/// Parse JSON text, turning syntax errors into a ConfigError with a position.
nlohmann::json parse_json(std::string_view text, const std::string& file);

}  // namespace gridteam::io
