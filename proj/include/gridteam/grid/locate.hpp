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
#include <set>
#include <stdexcept>
#include <string>

#include "gridteam/grid/topology.hpp"

namespace gridteam::grid {

struct Detection {
  bool detected = false;
  std::int64_t at = 0;  // tick of the observation

  friend bool operator==(const Detection&, const Detection&) = default;
};

/// Fault-current flags per switch. Switches absent from the map are unknown.
using DetectionSnapshot = std::map<std::string, Detection>;

/// The faulted stretch: everything downstream of `upstream` and upstream of
/// every switch in `downstream` (empty at a feeder tail).
struct FaultSegment {
  std::string upstream;
  std::set<std::string> downstream;

  friend bool operator==(const FaultSegment&, const FaultSegment&) = default;
};

class ContradictoryDetections : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Infer the faulted stretch from fault-current flags. Distances and
/// up/downstream are taken on the normal-position network. Unknown switches
/// are looked through. Returns nullopt if nothing detected.
std::optional<FaultSegment> locate_segment(const Topology& topology, const DetectionSnapshot& snapshot);

/// Segment ids inside the faulted stretch.
std::set<std::string> fault_region(const Topology& topology, const FaultSegment& fault);

}  // namespace gridteam::grid
