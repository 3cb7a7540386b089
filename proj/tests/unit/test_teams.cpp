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

#include "gridteam/teams/teams.hpp"

using namespace gridteam::teams;

namespace {

Holarchy feeder_holarchy(std::vector<std::string> extra = {}) {
  Holarchy h;
  h.add_performer({"CB1", {"trip", "monitor"}});
  h.add_performer({"ROS11", {"monitor", "open"}});
  h.add_performer({"ROS12", {"monitor", "open"}});
  Team feeder{"Feeder1", {MemberRef::performer("CB1"), MemberRef::performer("ROS11"),
                          MemberRef::performer("ROS12")}};
  for (const auto& id : extra) {
    h.add_performer({id, {"monitor", "open"}});
    feeder.members.push_back(MemberRef::performer(id));
  }
  h.add_team(std::move(feeder));
  h.add_team(Team{"Substation", {MemberRef::team("Feeder1")}});
  h.validate();
  return h;
}

const Role breaker{"breaker-monitor", {"trip"}, 1, 1};
const Role monitors{"switch-monitor", {"open"}, 1, 2};

}  // namespace

TEST_CASE("form_task_team fills roles in member order") {
  const auto h = feeder_holarchy();
  const auto tt = form_task_team(h, "Feeder1", {breaker, monitors});
  CHECK(tt.status == TaskTeamStatus::Full);
  CHECK(tt.fillers("breaker-monitor") == std::vector<std::string>{"CB1"});
  CHECK(tt.fillers("switch-monitor") == std::vector<std::string>{"ROS11", "ROS12"});
  CHECK(tt.performer_for("switch-monitor", 1) == "ROS12");
}

TEST_CASE("form_task_team picks the first capable candidate") {
  const auto h = feeder_holarchy();
  const auto tt = form_task_team(h, "Feeder1", {Role{"one", {"open"}, 1, 1}});
  CHECK(tt.fillers("one") == std::vector<std::string>{"ROS11"});
}

TEST_CASE("form_task_team draws on sub-team members") {
  const auto h = feeder_holarchy();
  const auto tt = form_task_team(h, "Substation", {breaker});
  CHECK(tt.fillers("breaker-monitor") == std::vector<std::string>{"CB1"});
}

TEST_CASE("form_task_team reports the unfillable role") {
  const auto h = feeder_holarchy();
  try {
    form_task_team(h, "Feeder1", {breaker, Role{"pilot", {"fly"}, 1, 1}});
    FAIL("expected UnfillableRole");
  } catch (const UnfillableRole& e) {
    CHECK(e.role() == "pilot");
  }
}

TEST_CASE("form_task_team skips failed performers") {
  auto h = feeder_holarchy();
  h.mark_failed("ROS11");
  const auto tt = form_task_team(h, "Feeder1", {monitors});
  CHECK(tt.fillers("switch-monitor") == std::vector<std::string>{"ROS12"});
}

TEST_CASE("reform_task_team") {
  SUBCASE("spare capable member takes over the slot") {
    auto h = feeder_holarchy({"ROS11B"});
    const auto tt = form_task_team(h, "Feeder1", {Role{"switch-monitor", {"open"}, 1, 1}});
    REQUIRE(tt.fillers("switch-monitor") == std::vector<std::string>{"ROS11"});
    h.mark_failed("ROS11");
    const auto r = reform_task_team(h, tt, "ROS11");
    CHECK(r.action == ReformAction::Rebound);
    CHECK(r.replacement == "ROS12");
    CHECK(r.team.status == TaskTeamStatus::Full);
    CHECK(r.team.fillers("switch-monitor") == std::vector<std::string>{"ROS12"});
  }
  SUBCASE("no spare but minimum still met degrades") {
    auto h = feeder_holarchy();
    const auto tt = form_task_team(h, "Feeder1", {breaker, monitors});
    h.mark_failed("ROS12");
    const auto r = reform_task_team(h, tt, "ROS12");
    CHECK(r.action == ReformAction::Removed);
    CHECK(r.team.status == TaskTeamStatus::Degraded);
    CHECK(r.team.fillers("switch-monitor") == std::vector<std::string>{"ROS11"});
    CHECK(r.team.fillers("breaker-monitor") == std::vector<std::string>{"CB1"});
  }
  SUBCASE("sole filler of a required role breaks the team") {
    auto h = feeder_holarchy();
    const auto tt = form_task_team(h, "Feeder1", {breaker, monitors});
    h.mark_failed("CB1");
    const auto r = reform_task_team(h, tt, "CB1");
    CHECK(r.action == ReformAction::Broken);
    CHECK(r.team.status == TaskTeamStatus::Broken);
    CHECK(r.team.fillers("switch-monitor") == tt.fillers("switch-monitor"));
  }
  SUBCASE("failing an unbound performer is an error") {
    auto h = feeder_holarchy();
    const auto tt = form_task_team(h, "Feeder1", {breaker});
    CHECK_THROWS_AS(reform_task_team(h, tt, "ROS11"), TeamError);
  }
}

TEST_CASE("holarchy validation") {
  Holarchy h;
  h.add_performer({"A", {"x"}});
  h.add_team(Team{"T1", {MemberRef::performer("A")}});
  h.add_team(Team{"T2", {MemberRef::performer("A")}});
  CHECK_THROWS_AS(h.validate(), TeamError);

  Holarchy dangling;
  dangling.add_team(Team{"T", {MemberRef::team("Nope")}});
  CHECK_THROWS_AS(dangling.validate(), TeamError);

  Holarchy dup;
  dup.add_performer({"A", {}});
  CHECK_THROWS_AS(dup.add_performer({"A", {}}), TeamError);
  CHECK_THROWS_AS(dup.add_team(Team{"A", {}}), TeamError);
}

TEST_CASE("role definitions are checked") {
  const auto h = feeder_holarchy();
  CHECK_THROWS_AS(form_task_team(h, "Feeder1", {Role{"bad", {"open"}, 2, 1}}), TeamError);
  CHECK_THROWS_AS(form_task_team(h, "Feeder1", {Role{"bad", {"open"}, 0, 1}}), TeamError);
  const auto tt = form_task_team(h, "Feeder1", {Role{"opt", {"fly"}, 0, 1, true}});
  CHECK(tt.fillers("opt").empty());
  CHECK(tt.status == TaskTeamStatus::Full);
}
