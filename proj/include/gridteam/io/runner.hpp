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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "gridteam/sim/event_log.hpp"

namespace gridteam::io {

enum ExitCode : int {
  kExitRestored = 0,
  kExitPartial = 1,
  kExitViolation = 2,
  kExitConfig = 3,
};

struct RunConfig {
  std::filesystem::path topology;
  std::filesystem::path scenario;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> latency;
  std::optional<std::int64_t> max_ticks;
  std::optional<std::filesystem::path> log;     // stdout when unset
  sim::LogFormat format = sim::LogFormat::Jsonl;
  std::optional<std::filesystem::path> report;  // see run_scenario
};

/// Print diagnostics to `err`; returns 0 when the topology is usable, else 3.
int validate(const std::filesystem::path& topology, std::ostream& out, std::ostream& err);

/// Load, run and write the log and the JSON report. The report goes to
/// config.report if set, otherwise to `out` when the log went to a file,
/// otherwise to `err`. Configuration problems print to `err` and return 3.
int run_scenario(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace gridteam::io
