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

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace gridteam::ied {

/// Simplified IEC 61850 information model: server -> logical devices ->
/// logical nodes -> data objects. Names are unique per level.
class DeviceModel {
 public:
  using Value = nlohmann::json;

  explicit DeviceModel(std::string server) : server_(std::move(server)) {}

  /// The per-switch protection device: LD0 holding TCTR1, PIOC1, PTRC1,
  /// CSWI1 and XCBR1 with their data objects initialised.
  static DeviceModel protection_ied(std::string server);

  const std::string& server() const { return server_; }

  void add_logical_node(const std::string& device, const std::string& node);
  void set(const std::string& device, const std::string& node, const std::string& object, Value value);
  const Value& get(std::string_view device, std::string_view node, std::string_view object) const;
  bool has(std::string_view device, std::string_view node, std::string_view object) const;

  std::vector<std::string> logical_devices() const;
  std::vector<std::string> logical_nodes(std::string_view device) const;

  /// Dotted reference, e.g. "CB1.LD0.PIOC1.Str".
  std::string path(std::string_view device, std::string_view node, std::string_view object) const;

 private:
  using Objects = std::map<std::string, Value, std::less<>>;
  using Nodes = std::map<std::string, Objects, std::less<>>;

  std::string server_;
  std::map<std::string, Nodes, std::less<>> devices_;
};

}  // namespace gridteam::ied
