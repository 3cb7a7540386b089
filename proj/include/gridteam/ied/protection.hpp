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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gridteam/ied/device_model.hpp"

namespace gridteam::ied {

struct ProtectionConfig {
  double threshold_a = 400.0;
  int trip_persistence = 1;         // consecutive picked-up samples before PTRC trips
  std::int64_t operate_delay = 0;   // ticks from CSWI command to XCBR operation
  std::int64_t sampling_period = 1;
  bool trip_enabled = false;        // CSWI may open the breaker on its own

  /// Throws std::invalid_argument on a non-positive threshold, persistence
  /// below one, a negative delay or a non-positive sampling period.
  void validate() const;
};

struct DataUpdate {
  std::string path;
  nlohmann::json value;
};

struct PipelineOutput {
  bool sampled = false;
  bool pickup = false;
  bool trip = false;                        // PTRC asserted on this sample
  bool open_command = false;                // CSWI issued an open
  std::optional<std::int64_t> operate_at;   // tick XCBR will move the switch
  std::vector<DataUpdate> updates;          // in TCTR, PIOC, PTRC, CSWI, XCBR order
  std::optional<std::string> diagnostic;
};

/// TCTR -> PIOC -> PTRC -> CSWI -> XCBR chain for one switching unit.
class ProtectionPipeline {
 public:
  ProtectionPipeline(std::string server, ProtectionConfig config);

  PipelineOutput step(double current_a, std::int64_t tick);

  /// PIOC pickup latched since the last reset.
  bool latched() const { return latched_; }
  std::optional<std::int64_t> latched_at() const { return latched_at_; }
  void reset();
  void set_position(bool open);

  const DeviceModel& device() const { return device_; }
  const ProtectionConfig& config() const { return config_; }

 private:
  void update(PipelineOutput& out, const std::string& node, const std::string& object, nlohmann::json v);

  DeviceModel device_;
  ProtectionConfig config_;
  std::optional<std::int64_t> last_tick_;
  int consecutive_ = 0;
  bool latched_ = false;
  std::optional<std::int64_t> latched_at_;
  bool command_issued_ = false;
  bool open_ = false;
};

}  // namespace gridteam::ied
