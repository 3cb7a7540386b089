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

#include "gridteam/ied/protection.hpp"

#include <stdexcept>

namespace gridteam::ied {

void ProtectionConfig::validate() const {
  if (!(threshold_a > 0.0)) throw std::invalid_argument("protection threshold must be > 0");
  if (trip_persistence < 1) throw std::invalid_argument("trip persistence must be >= 1");
  if (operate_delay < 0) throw std::invalid_argument("operate delay must be >= 0");
  if (sampling_period < 1) throw std::invalid_argument("sampling period must be >= 1");
}

ProtectionPipeline::ProtectionPipeline(std::string server, ProtectionConfig config)
    : device_(DeviceModel::protection_ied(std::move(server))), config_(config) {
  config_.validate();
}

void ProtectionPipeline::update(PipelineOutput& out, const std::string& node, const std::string& object,
                                nlohmann::json v) {
  device_.set("LD0", node, object, v);
  out.updates.push_back({device_.path("LD0", node, object), std::move(v)});
}

PipelineOutput ProtectionPipeline::step(double current_a, std::int64_t tick) {
  PipelineOutput out;
  if (tick % config_.sampling_period != 0) {
    out.diagnostic = "tick " + std::to_string(tick) + " is not on the sampling grid";
    return out;
  }
  if (last_tick_ && tick <= *last_tick_) {
    out.diagnostic = "out-of-order sample at tick " + std::to_string(tick) + " ignored";
    return out;
  }
  last_tick_ = tick;
  out.sampled = true;

  update(out, "TCTR1", "Amp", current_a);

  out.pickup = current_a > config_.threshold_a;
  if (out.pickup && !latched_) {
    latched_ = true;
    latched_at_ = tick;
  }
  update(out, "PIOC1", "Str", out.pickup);
  update(out, "PIOC1", "Latch", latched_);

  consecutive_ = out.pickup ? consecutive_ + 1 : 0;
  out.trip = consecutive_ >= config_.trip_persistence;
  update(out, "PTRC1", "Cnt", consecutive_);
  update(out, "PTRC1", "Tr", out.trip);

  if (out.trip && config_.trip_enabled && !command_issued_ && !open_) {
    command_issued_ = true;
    out.open_command = true;
    out.operate_at = tick + config_.operate_delay;
    update(out, "CSWI1", "OpOpn", true);
    update(out, "XCBR1", "OpAt", *out.operate_at);
  }
  return out;
}

void ProtectionPipeline::reset() {
  consecutive_ = 0;
  latched_ = false;
  latched_at_.reset();
  command_issued_ = false;
  device_.set("LD0", "PIOC1", "Str", false);
  device_.set("LD0", "PIOC1", "Latch", false);
  device_.set("LD0", "PTRC1", "Cnt", 0);
  device_.set("LD0", "PTRC1", "Tr", false);
  device_.set("LD0", "CSWI1", "OpOpn", false);
}

void ProtectionPipeline::set_position(bool open) {
  open_ = open;
  device_.set("LD0", "XCBR1", "Pos", open ? "Open" : "Closed");
}

}  // namespace gridteam::ied
