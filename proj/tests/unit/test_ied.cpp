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

#include "doctest.h"

#include <string>
#include <vector>

#include "gridteam/ied/protection.hpp"

using namespace gridteam::ied;

namespace {

ProtectionConfig breaker_config() {
  ProtectionConfig c;
  c.trip_enabled = true;
  return c;
}

std::vector<std::string> paths(const PipelineOutput& out) {
  std::vector<std::string> p;
  for (const auto& u : out.updates) p.push_back(u.path);
  return p;
}

}  // namespace

TEST_CASE("device model tree") {
  const auto m = DeviceModel::protection_ied("CB1");
  CHECK(m.logical_devices() == std::vector<std::string>{"LD0"});
  CHECK(m.logical_nodes("LD0") == std::vector<std::string>{"CSWI1", "PIOC1", "PTRC1", "TCTR1", "XCBR1"});
  CHECK(m.get("LD0", "XCBR1", "Pos") == "Closed");
  CHECK(m.path("LD0", "PIOC1", "Str") == "CB1.LD0.PIOC1.Str");
  CHECK_FALSE(m.has("LD0", "PIOC1", "Nope"));
  CHECK_THROWS(m.get("LD9", "PIOC1", "Str"));
}

TEST_CASE("current below threshold does nothing") {
  ProtectionPipeline p("CB1", breaker_config());
  const auto out = p.step(10.0, 1);
  CHECK(out.sampled);
  CHECK_FALSE(out.pickup);
  CHECK_FALSE(out.trip);
  CHECK_FALSE(out.open_command);
  CHECK_FALSE(p.latched());
}

TEST_CASE("pickup is strictly above the threshold") {
  ProtectionPipeline p("ROS11", ProtectionConfig{});
  CHECK_FALSE(p.step(400.0, 1).pickup);
  CHECK(p.step(400.5, 2).pickup);
}

TEST_CASE("overcurrent trips the breaker in the same tick") {
  ProtectionPipeline p("CB1", breaker_config());
  const auto out = p.step(2000.0, 7);
  CHECK(out.pickup);
  CHECK(out.trip);
  CHECK(out.open_command);
  CHECK(out.operate_at == 7);
  CHECK(p.latched_at() == 7);
  CHECK(paths(out) == std::vector<std::string>{"CB1.LD0.TCTR1.Amp", "CB1.LD0.PIOC1.Str", "CB1.LD0.PIOC1.Latch",
                                               "CB1.LD0.PTRC1.Cnt", "CB1.LD0.PTRC1.Tr", "CB1.LD0.CSWI1.OpOpn",
                                               "CB1.LD0.XCBR1.OpAt"});
}

TEST_CASE("monitor-only devices latch but never command") {
  ProtectionPipeline p("ROS11", ProtectionConfig{});
  const auto out = p.step(4000.0, 3);
  CHECK(out.trip);
  CHECK_FALSE(out.open_command);
  CHECK(p.latched());
  // The latch survives the fault current going away.
  p.step(0.0, 4);
  CHECK(p.latched());
  CHECK(p.latched_at() == 3);
  p.reset();
  CHECK_FALSE(p.latched());
  CHECK(p.device().get("LD0", "PIOC1", "Latch") == false);
}

TEST_CASE("persistence and operate delay") {
  ProtectionConfig c = breaker_config();
  c.trip_persistence = 3;
  c.operate_delay = 2;
  ProtectionPipeline p("CB1", c);
  CHECK_FALSE(p.step(900.0, 1).trip);
  CHECK_FALSE(p.step(900.0, 2).trip);
  const auto out = p.step(900.0, 3);
  CHECK(out.trip);
  CHECK(out.operate_at == 5);
  // Only one open command per latch.
  CHECK_FALSE(p.step(900.0, 4).open_command);
}

TEST_CASE("a dip below the threshold restarts persistence") {
  ProtectionConfig c = breaker_config();
  c.trip_persistence = 2;
  ProtectionPipeline p("CB1", c);
  p.step(900.0, 1);
  p.step(10.0, 2);
  CHECK_FALSE(p.step(900.0, 3).trip);
  CHECK(p.step(900.0, 4).trip);
}

TEST_CASE("samples off the grid or out of order are ignored") {
  ProtectionConfig c;
  c.sampling_period = 2;
  ProtectionPipeline p("ROS11", c);
  const auto odd = p.step(900.0, 3);
  CHECK_FALSE(odd.sampled);
  CHECK(odd.diagnostic);
  CHECK(p.step(900.0, 4).sampled);
  const auto late = p.step(900.0, 2);
  CHECK_FALSE(late.sampled);
  CHECK(late.diagnostic);
}

TEST_CASE("an open breaker issues no command") {
  ProtectionPipeline p("CB1", breaker_config());
  p.set_position(true);
  CHECK_FALSE(p.step(2000.0, 1).open_command);
  CHECK(p.device().get("LD0", "XCBR1", "Pos") == "Open");
}

TEST_CASE("config validation") {
  ProtectionConfig c;
  c.threshold_a = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ProtectionConfig{};
  c.trip_persistence = 0;
  CHECK_THROWS_AS(ProtectionPipeline("X", c), std::invalid_argument);
}
