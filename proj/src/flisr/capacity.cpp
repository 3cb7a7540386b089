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

#include "gridteam/flisr/capacity.hpp"

#include <algorithm>

namespace gridteam::flisr {

RestorationGrant evaluate_grant(std::int64_t capacity_kw, std::int64_t served_kw, std::int64_t committed_kw,
                                const RestorationRequest& request) {
  const std::int64_t spare = capacity_kw - served_kw - committed_kw;
  if (request.demand_kw <= 0) return {false, "malformed request: demand must be positive", spare};
  if (request.route.path.empty()) return {false, "malformed request: empty path", spare};
  if (spare < request.demand_kw) {
    return {false, "insufficient capacity: spare " + std::to_string(spare) + " kW < " +
                       std::to_string(request.demand_kw) + " kW",
            spare};
  }
  return {true, "granted", spare - request.demand_kw};
}

RestorationGrant CapacityLedger::grant(const RestorationRequest& request, const grid::Energization& current) {
  const auto& source = request.route.source;
  const auto decision = evaluate_grant(topology_->source(source).capacity_kw, served(source, current),
                                       committed(source, current), request);
  if (decision.granted) {
    auto loads = request.loads.empty() ? std::vector<std::string>{request.load} : request.loads;
    grants_.push_back(Commitment{source, std::move(loads), request.demand_kw});
  }
  return decision;
}

std::int64_t CapacityLedger::committed(const std::string& source, const grid::Energization& current) const {
  std::int64_t total = 0;
  for (const auto& c : grants_) {
    if (c.source != source) continue;
    const bool fed = std::all_of(c.loads.begin(), c.loads.end(), [&](const std::string& load) {
      const auto& src = current.load_source.at(load);
      return src && *src == source;
    });
    if (!fed) total += c.demand_kw;
  }
  return total;
}

std::int64_t CapacityLedger::served(const std::string& source, const grid::Energization& current) const {
  std::int64_t total = 0;
  for (const auto& load : topology_->loads()) {
    const auto& src = current.load_source.at(load.id);
    if (src && *src == source) total += load.demand_kw;
  }
  return total;
}

std::vector<std::string> CapacityLedger::overcommitted(const grid::Energization& current) const {
  std::vector<std::string> out;
  for (const auto& src : topology_->sources()) {
    if (served(src.id, current) + committed(src.id, current) > src.capacity_kw) out.push_back(src.id);
  }
  return out;
}

}  // namespace gridteam::flisr
