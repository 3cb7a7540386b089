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
#include <memory>
#include <string>
#include <vector>

#include "gridteam/flisr/deployment.hpp"
#include "gridteam/flisr/report.hpp"
#include "gridteam/grid/topology.hpp"
#include "gridteam/sim/scenario.hpp"

namespace gridteam::sim {

struct BatchItem {
  std::shared_ptr<const grid::Topology> topology;
  std::shared_ptr<const flisr::Deployment> deployment;
  Scenario scenario;
  SimConfig config;
};

/// What a sweep keeps of each run.
struct BatchSummary {
  int exit_code = 0;
  flisr::Outcome outcome = flisr::Outcome::NoFault;
  std::int64_t ticks = 0;
  std::size_t events = 0;
  std::uint64_t log_digest = 0;  // FNV-1a over the JSONL log
  std::vector<std::string> violations;
  std::string error;  // set when the run threw

  friend bool operator==(const BatchSummary&, const BatchSummary&) = default;
};

std::uint64_t fnv1a(const std::string& text);

BatchSummary run_one(const BatchItem& item);

/// Reference implementation: one run after another.
std::vector<BatchSummary> run_batch_serial(const std::vector<BatchItem>& items);

/// Same results as run_batch_serial, runs spread over OpenMP threads.
/// threads <= 0 uses the OpenMP default.
std::vector<BatchSummary> run_batch_parallel(const std::vector<BatchItem>& items, int threads = 0);

}  // namespace gridteam::sim
