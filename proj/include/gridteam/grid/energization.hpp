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
#include <optional>
#include <string>
#include <vector>

#include "gridteam/grid/topology.hpp"

namespace gridteam::grid {

struct Energization {
  /// Feeding source per load; nullopt when de-energized.
  std::map<std::string, std::optional<std::string>> load_source;
  /// Feeding source index per segment (the first source to reach it).
  std::vector<std::optional<std::size_t>> segment_source;
  /// False iff a closed path joins two sources.
  bool radial = true;

  bool energized(std::size_t segment) const { return segment_source[segment].has_value(); }
};

Energization energization(const Topology& topology, const SwitchStates& states);

/// Demand currently fed by each source, keyed by source id.
std::map<std::string, std::int64_t> served_demand(const Topology& topology, const Energization& e);

/// Closed switches on the path from the feeding source to `segment`, listed
/// from the source outward. Empty when the segment is de-energized.
std::vector<std::string> feed_path(const Topology& topology, const SwitchStates& states,
                                   std::size_t segment);

}  // namespace gridteam::grid
