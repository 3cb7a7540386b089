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
#include <string>
#include <vector>

#include "gridteam/grid/energization.hpp"
#include "gridteam/grid/topology.hpp"

namespace gridteam::flisr {

struct RestorationRequest {
  std::string load;           // load the restoration goal belongs to
  std::vector<std::string> loads;  // every load the route would energize
  std::int64_t demand_kw = 0;
  grid::RestorationRoute route;
  std::string team;
};

struct RestorationGrant {
  bool granted = false;
  std::string reason;
  std::int64_t remaining_kw = 0;  // spare after this decision
};

/// Pure grant rule: spare = capacity - served - committed; granted iff
/// spare covers the demand. Non-positive demand is refused as malformed.
RestorationGrant evaluate_grant(std::int64_t capacity_kw, std::int64_t served_kw, std::int64_t committed_kw,
                                const RestorationRequest& request);

/// Per-episode grant book of all zone substations.
///
/// A grant stays committed until its loads are actually fed from the
/// granting source, at which point the demand shows up as served instead.
class CapacityLedger {
 public:
  explicit CapacityLedger(const grid::Topology& topology) : topology_(&topology) {}

  /// Decide a request against the current energization and record a grant.
  RestorationGrant grant(const RestorationRequest& request, const grid::Energization& current);

  std::int64_t committed(const std::string& source, const grid::Energization& current) const;
  std::int64_t served(const std::string& source, const grid::Energization& current) const;

  /// Sources where served + committed exceeds capacity.
  std::vector<std::string> overcommitted(const grid::Energization& current) const;

  void clear() { grants_.clear(); }

 private:
  struct Commitment {
    std::string source;
    std::vector<std::string> loads;
    std::int64_t demand_kw;
  };

  const grid::Topology* topology_;
  std::vector<Commitment> grants_;
};

}  // namespace gridteam::flisr
