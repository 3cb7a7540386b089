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

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "gridteam/io/topology_io.hpp"
#include "gridteam/sim/scenario.hpp"

namespace gridteam::io {

/// Throws ConfigError on syntax or schema problems. References to segments
/// and agents are checked against a topology by sim::check_scenario.
sim::Scenario parse_scenario(std::string_view text, const std::string& file = "<scenario>");
sim::Scenario load_scenario(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const sim::Scenario& scenario);

}  // namespace gridteam::io
