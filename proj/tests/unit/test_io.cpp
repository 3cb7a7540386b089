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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "gridteam/io/runner.hpp"
#include "gridteam/io/scenario_io.hpp"
#include "gridteam/io/topology_io.hpp"

using namespace gridteam;
namespace fs = std::filesystem;

namespace {

const char* kTopology = "data/three_zone_utility.topology";
const char* kScenario = "data/three_zone_fault_seg11.scenario";

// Scratch files under the system temp dir, removed on destruction.
struct TempDir {
  fs::path dir;
  TempDir() {
    static int counter = 0;
    dir = fs::temp_directory_path() / ("gridteam_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return dir / name;
  }
};

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

io::RunConfig paths(const fs::path& topology, const fs::path& scenario) {
  io::RunConfig c;
  c.topology = topology;
  c.scenario = scenario;
  return c;
}

Outcome run(const io::RunConfig& config) {
  std::ostringstream out, err;
  const int code = io::run_scenario(config, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("bundled scenario restores and reports") {
  const auto r = run(paths(kTopology, kScenario));
  CHECK(r.code == io::kExitRestored);
  // Log on stdout, report on stderr.
  CHECK(r.out.rfind("{\"header\":", 0) == 0);
  const auto report = nlohmann::json::parse(r.err);
  CHECK(report["outcome"] == "Restored");
  bool isolated = false;
  for (const auto& l : report["restoration"]["loads"]) isolated |= l["load"] == "Load1" && l["status"] == "isolated";
  CHECK(isolated);
}

TEST_CASE("log and report files") {
  TempDir tmp;
  auto c = paths(kTopology, kScenario);
  c.log = tmp.dir / "run.log";
  c.format = sim::LogFormat::Text;
  c.report = tmp.dir / "report.json";
  const auto r = run(c);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const auto log = io::read_file(*c.log);
  CHECK(log.find("t=5 ") != std::string::npos);
  CHECK(log.find("Trip CB1") != std::string::npos);
  CHECK(nlohmann::json::parse(io::read_file(*c.report))["outcome"] == "Restored");
}

TEST_CASE("command-line settings override the scenario") {
  TempDir tmp;
  auto c = paths(kTopology, kScenario);
  c.latency = 2;
  c.seed = 7;
  c.max_ticks = 300;
  c.log = tmp.dir / "run.jsonl";
  CHECK(run(c).code == 0);
  const auto first = io::read_file(*c.log).substr(0, io::read_file(*c.log).find('\n'));
  CHECK(nlohmann::json::parse(first)["header"] == nlohmann::json{{"seed", 7}, {"latency", 2}, {"max_ticks", 300}});
}

TEST_CASE("no spare capacity leaves loads unserved") {
  TempDir tmp;
  auto text = io::read_file(kTopology);
  text = replace(text, "\"capacity_kw\": 1600", "\"capacity_kw\": 800");
  text = replace(text, "\"capacity_kw\": 1600", "\"capacity_kw\": 800");
  const auto r = run(paths(tmp.write("t.topology", text), kScenario));
  CHECK(r.code == io::kExitPartial);
  CHECK(nlohmann::json::parse(r.err)["outcome"] == "Degraded");
}

TEST_CASE("configuration errors exit 3") {
  TempDir tmp;
  SUBCASE("missing scenario") {
    const auto r = run(paths(kTopology, tmp.dir / "nope.scenario"));
    CHECK(r.code == io::kExitConfig);
    CHECK(r.err.find("nope.scenario") != std::string::npos);
  }
  SUBCASE("scenario names an unknown segment") {
    const auto s = tmp.write("s.scenario", R"({"faults": [{"tick": 1, "segment": "Seg99"}]})");
    const auto r = run(paths(kTopology, s));
    CHECK(r.code == io::kExitConfig);
    CHECK(r.err.find("Seg99") != std::string::npos);
  }
  SUBCASE("bad latency") {
    auto c = paths(kTopology, kScenario);
    c.latency = 0;
    CHECK(run(c).code == io::kExitConfig);
  }
}

TEST_CASE("validate diagnostics carry a location") {
  const auto text = io::read_file(kTopology);
  SUBCASE("clean file") { CHECK(io::validate_topology(text, "x").empty()); }
  SUBCASE("closed tie") {
    const auto d = io::validate_topology(
        replace(text, R"("TIE121", "kind": "TIE", "normal": "Open")", R"("TIE121", "kind": "TIE", "normal": "Closed")"),
        "x");
    REQUIRE_FALSE(d.empty());
    CHECK(d[0].pointer == "/switches/9");
    CHECK(d[0].message.find("normally Open") != std::string::npos);
    CHECK(d[0].line == 32u);
    CHECK(d[0].to_string().rfind("x:32: /switches/9: ", 0) == 0);
  }
  SUBCASE("unknown switch on a route") {
    const auto d = io::validate_topology(replace(text, R"("TIE121", "ROS21", "CB2")", R"("TIE121", "ROS99", "CB2")"), "x");
    REQUIRE(d.size() == 1);
    CHECK(d[0].pointer == "/routes/Load2/0/path/1");
    CHECK(d[0].message.find("ROS99") != std::string::npos);
  }
  SUBCASE("unknown field") {
    const auto d = io::validate_topology(replace(text, R"("name": "three-zone utility")", R"("nmae": "x")"), "x");
    REQUIRE_FALSE(d.empty());
    CHECK(d[0].pointer == "/nmae");
  }
  SUBCASE("syntax error") {
    const auto d = io::validate_topology(replace(text, R"("Load1", "segment")", R"("Load1" "segment")"), "x");
    REQUIRE(d.size() == 1);
    CHECK(d[0].line == 36u);
    CHECK(d[0].column == 28u);
  }
  SUBCASE("several problems at once") {
    auto bad = replace(text, R"("TIE121", "ROS21", "CB2")", R"("TIE121", "ROS99", "CB2")");
    bad = replace(bad, R"("demand_kw": 400)", R"("demand_kw": "lots")");
    CHECK(io::validate_topology(bad, "x").size() == 2);
  }
}

TEST_CASE("validate command output") {
  std::ostringstream out, err;
  CHECK(io::validate(kTopology, out, err) == 0);
  CHECK(out.str().find(": ok (3 sources, 11 switches, 9 loads, 11 agents)") != std::string::npos);
  CHECK(err.str().empty());
}

TEST_CASE("topology and scenario round-trip") {
  const auto doc = io::load_topology(kTopology);
  const auto once = io::to_json(doc);
  const auto again = io::to_json(io::parse_topology(once.dump()));
  CHECK(once == again);
  CHECK(doc.deployment.agents.size() == 11);
  CHECK(doc.deployment.teams.size() == 4);

  const auto s = io::load_scenario(kScenario);
  CHECK(io::to_json(io::parse_scenario(io::to_json(s).dump())) == io::to_json(s));
  REQUIRE(s.faults.size() == 1);
  CHECK(s.faults[0].segment == "Seg11");
  CHECK(s.tick_budget == 200);
}

TEST_CASE("agents and teams default when omitted") {
  auto j = nlohmann::ordered_json::parse(io::read_file(kTopology));
  j.erase("agents");
  j.erase("teams");
  const auto doc = io::parse_topology(j.dump());
  const auto full = io::load_topology(kTopology);
  CHECK(doc.deployment.agents.size() == full.deployment.agents.size());
  CHECK(doc.deployment.teams.size() == full.deployment.teams.size());
}

// Random damage to the bundled file: validation passes exactly when a run
// does not stop on configuration. The scenario has no faults so it cannot be
// the thing that is wrong.
TEST_CASE("validate agrees with run") {
  TempDir tmp;
  const auto scenario = tmp.write("quiet.scenario", R"({"faults": [], "tick_budget": 5})");
  const auto base = nlohmann::ordered_json::parse(io::read_file(kTopology));
  std::mt19937 rng(5);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const std::vector<std::string> arrays{"sources", "segments", "switches", "loads", "agents", "teams"};
  int ok = 0, bad = 0;
  for (int i = 0; i < 150; ++i) {
    auto j = base;
    const int mutations = 1 + static_cast<int>(pick(2));
    for (int m = 0; m < mutations; ++m) {
      auto& arr = j[arrays[pick(arrays.size())]];
      auto& item = arr[pick(arr.size())];
      switch (pick(6)) {
        case 0: arr.erase(pick(arr.size())); break;
        case 1: item["id"] = "X" + std::to_string(pick(3)); break;
        case 2: {
          auto it = item.begin();
          std::advance(it, pick(item.size()));
          item.erase(it.key());
          break;
        }
        case 3: if (item.contains("normal")) item["normal"] = item["normal"] == "Open" ? "Closed" : "Open"; break;
        case 4: if (item.contains("capacity_kw")) item["capacity_kw"] = -1; break;
        default: arr.push_back(item); break;
      }
    }
    const auto path = tmp.write("m.topology", j.dump(2));
    std::ostringstream out, err;
    const int v = io::validate(path, out, err);
    const auto r = run(paths(path, scenario));
    CHECK_MESSAGE((v == 0) == (r.code != io::kExitConfig), (j.dump() + "\n" + err.str() + r.err));
    (v == 0 ? ok : bad)++;
  }
  // The generator should exercise both sides.
  CHECK(ok > 10);
  CHECK(bad > 10);
}
