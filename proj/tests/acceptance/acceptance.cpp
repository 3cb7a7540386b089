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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any failed. Run from the source tree (ctest does this).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gridteam/bdi/executor.hpp"
#include "gridteam/grid/locate.hpp"
#include "gridteam/io/scenario_io.hpp"
#include "gridteam/io/topology_io.hpp"
#include "gridteam/sim/batch.hpp"
#include "gridteam/sim/simulation.hpp"
#include "support/behaviors.hpp"
#include "support/fault_oracle.hpp"
#include "support/log_replay.hpp"
#include "support/three_zone.hpp"
#include "support/random_grid.hpp"

using namespace gridteam;
using bdi::GoalState;
using bdi::ProcessNode;
using sim::EventKind;

namespace {

// Collects failure notes for one criterion.
struct Check {
  std::vector<std::string> notes;
  void expect(bool ok, const std::string& what) {
    if (!ok && notes.size() < 10) notes.push_back(what);
  }
  bool ok() const { return notes.empty(); }
};

sim::Scenario fault_at(const std::string& segment, std::int64_t tick = 5) {
  sim::Scenario s;
  s.faults.push_back({tick, segment, "Permanent"});
  return s;
}

sim::RunResult run(const grid::Topology& t, const flisr::Deployment& d, const sim::Scenario& s,
                   sim::SimConfig config = {}) {
  return sim::run(t, d, s, config.with(s));
}

std::vector<const sim::Event*> milestones(const sim::EventLog& log, const std::string& name) {
  std::vector<const sim::Event*> out;
  for (const auto& e : log.events()) {
    if (e.kind == EventKind::Milestone && e.detail["name"] == name) out.push_back(&e);
  }
  return out;
}

std::map<std::string, grid::Position> final_positions(const grid::Topology& t, const sim::EventLog& log) {
  std::map<std::string, grid::Position> pos;
  for (const auto& sw : t.switches()) pos[sw.id] = sw.normal;
  for (const auto& e : log.events()) {
    if (e.kind == EventKind::PositionChanged) {
      pos[e.actor] = e.detail["to"] == "Open" ? grid::Position::Open : grid::Position::Closed;
    }
  }
  return pos;
}

// ---------------------------------------------------------------------------
// 1. Reference trace on the bundled three-zone utility.

std::string project(const sim::Event& e) {
  switch (e.kind) {
    case EventKind::Trip: return "Trip " + e.actor;
    case EventKind::PositionChanged: return e.detail["to"].get<std::string>() + " " + e.actor;
    case EventKind::MessageSend: {
      const auto kind = e.detail["kind"].get<std::string>();
      const auto dst = e.detail["dst"].get<std::string>();
      const auto& p = e.detail["payload"];
      if (kind == "Query") return "Query " + dst;
      if (kind == "Reply") return "Reply " + e.actor + " " + (p["detected"].get<bool>() ? "true" : "false");
      if (kind == "Command") return "Command " + p["position"].get<std::string>() + " " + dst;
      if (kind == "Request") return "Request " + e.actor + "->" + dst;
      if (kind == "Grant") return "Grant " + e.actor;
      return "";
    }
    default: return "";
  }
}

// One group of the expected trace: `items` must all appear; when `ordered`
// they appear in the listed order. Chains are ordered sub-groups.
struct Group {
  std::vector<std::string> items;
  bool ordered = true;
};

bool criterion_reference_trace(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  const auto doc = io::load_topology("data/three_zone_utility.topology");
  const auto scenario = io::load_scenario("data/three_zone_fault_seg11.scenario");
  sim::SimConfig config;
  config.protection = doc.protection;
  const auto r = sim::run(doc.topology, doc.deployment, scenario, config.with(scenario));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::vector<std::string> proj;
  for (const auto& e : r.log.events()) {
    if (auto p = project(e); !p.empty()) proj.push_back(p);
  }
  auto positions = [&](const std::vector<std::string>& items, bool ordered) {
    std::vector<std::size_t> at;
    std::size_t from = 0;
    std::set<std::size_t> taken;
    for (const auto& item : items) {
      std::size_t i = ordered ? from : 0;
      while (i < proj.size() && (proj[i] != item || taken.contains(i))) ++i;
      if (i == proj.size()) {
        c.expect(false, "missing '" + item + "'");
        return at;
      }
      taken.insert(i);
      at.push_back(i);
      from = i + 1;
    }
    return at;
  };

  const std::vector<std::vector<Group>> stages{
      {{{"Trip CB1", "Open CB1"}}},
      {{{"Query ROS11", "Query ROS12"}, false}},
      {{{"Reply ROS11 false", "Reply ROS12 false"}, false}},
      {{{"Command Open ROS11", "Open ROS11"}}},
      {{{"Request Substation->TIE132", "Request TIE132->ROS32", "Request ROS32->ROS31", "Request ROS31->CB3",
         "Request CB3->Zone3"}},
       {{"Request Substation->TIE121", "Request TIE121->ROS21", "Request ROS21->CB2", "Request CB2->Zone2"}}},
      {{{"Grant Zone3", "Grant Zone2"}, false}},
      {{{"Command Open ROS12", "Open ROS12", "Command Closed TIE132", "Closed TIE132", "Command Closed TIE121",
         "Closed TIE121"}}},
  };
  std::optional<std::size_t> previous_max;
  for (const auto& stage : stages) {
    std::size_t lo = proj.size(), hi = 0;
    for (const auto& g : stage) {
      const auto at = positions(g.items, g.ordered);
      if (at.size() != g.items.size()) return false;
      lo = std::min(lo, *std::min_element(at.begin(), at.end()));
      hi = std::max(hi, *std::max_element(at.begin(), at.end()));
    }
    if (previous_max) c.expect(*previous_max < lo, "stage starting with '" + stage[0].items[0] + "' out of order");
    previous_max = hi;
  }

  // Nothing else of these kinds may appear.
  std::multiset<std::string> expected, actual(proj.begin(), proj.end());
  for (const auto& stage : stages) {
    for (const auto& g : stage) expected.insert(g.items.begin(), g.items.end());
  }
  c.expect(actual == expected, "projected trace has " + std::to_string(actual.size()) + " events, expected " +
                                   std::to_string(expected.size()));

  const auto f = testing::feeding(doc.topology, final_positions(doc.topology, r.log));
  c.expect(!f.source.at("Seg11"), "Seg11 live");
  c.expect(f.source.at("Seg12") == "Zone2", "Load2 not on Zone2");
  c.expect(f.source.at("Seg13") == "Zone3", "Load3 not on Zone3");
  c.expect(f.radial, "final network not radial");
  c.expect(r.report.radial, "report not radial");
  c.expect(r.exit_code == 0, "exit code " + std::to_string(r.exit_code));
  c.expect(secs < 1.0, "took " + std::to_string(secs) + " s");
  return c.ok();
}

// ---------------------------------------------------------------------------
// 2. Fault location against the brute-force placement oracle.

bool criterion_location(Check& c) {
  std::mt19937 rng(20260101);
  std::size_t cases = 0;
  for (int n = 0; n < 500; ++n) {
    const auto t = testing::random_feeder(rng, testing::uniform(rng, 2, 8));
    const auto d = flisr::default_deployment(t);
    const auto normal = grid::SwitchStates::normal(t);
    std::set<std::string> all;
    for (const auto& sw : t.switches()) all.insert(sw.id);
    for (const auto& seg : t.segments()) {
      if (seg.id == "Bus") continue;
      ++cases;
      const auto r = run(t, d, fault_at(seg.id, 2));
      const auto oracle = testing::consistent_placements(t, normal, all, testing::fault_current_switches(t, normal, seg.id));
      c.expect(oracle == std::set<std::string>{seg.id}, "oracle ambiguous for " + seg.id);
      if (!r.report.fault) {
        c.expect(false, "no location for " + seg.id);
        continue;
      }
      c.expect(grid::fault_region(t, *r.report.fault) == oracle, "region mismatch for " + seg.id);

      // Partial snapshots: the located region must contain every placement
      // consistent with what was observed.
      grid::DetectionSnapshot partial;
      std::set<std::string> observed, detected;
      const auto carry = testing::fault_current_switches(t, normal, seg.id);
      for (const auto& sw : t.switches()) {
        if (sw.kind != grid::SwitchKind::CB && testing::uniform(rng, 0, 3) == 0) continue;
        observed.insert(sw.id);
        const bool on = carry.contains(sw.id);
        if (on) detected.insert(sw.id);
        partial[sw.id] = grid::Detection{on};
      }
      const auto located = grid::locate_segment(t, partial);
      const auto consistent = testing::consistent_placements(t, normal, observed, detected);
      if (!located) {
        c.expect(false, "partial snapshot not located for " + seg.id);
        continue;
      }
      const auto region = grid::fault_region(t, *located);
      for (const auto& p : consistent) c.expect(region.contains(p), "partial region misses " + p);
      c.expect(region.contains(seg.id), "partial region misses the fault " + seg.id);
    }
  }
  std::cout << "  " << cases << " placements over 500 feeders\n";
  return c.ok();
}

// ---------------------------------------------------------------------------
// 3. Alternative routes after a denial.

bool criterion_alternative_route(Check& c) {
  {
    const auto t = testing::three_zone_topology_two_routes(1800, 1600, 800);
    const auto r = run(t, flisr::default_deployment(t), fault_at("Seg11"));
    const auto* l3 = r.report.load("Load3");
    c.expect(l3 && l3->status == "restored" && l3->source == "Zone2", "Load3 not restored through Zone2");
    c.expect(l3 && l3->attempts == 2, "Load3 attempts != 2");
    const auto denied = milestones(r.log, "RouteDenied");
    c.expect(denied.size() == 1 && denied[0]->detail["detail"]["source"] == "Zone3", "expected one Zone3 denial");
    c.expect(milestones(r.log, "RestoreFailed").empty(), "a restoration goal failed");
    c.expect(testing::replay_violations(t, r.log).empty(), "safety replay flagged the run");
  }
  {
    const auto t = testing::three_zone_topology_two_routes(1800, 800, 800);
    const auto r = run(t, flisr::default_deployment(t), fault_at("Seg11"));
    const auto* l3 = r.report.load("Load3");
    c.expect(l3 && l3->status == "unserved", "Load3 served with no capacity anywhere");
    c.expect(l3 && l3->attempts == 2 && l3->routes == 2, "Load3 did not try both routes");
    bool found = false;
    for (const auto* e : milestones(r.log, "RestoreFailed")) {
      const auto& d = e->detail["detail"];
      if (d["unit"] != "Load3") continue;
      found = true;
      c.expect(d["attempts"] == 2 && d["routes"] == 2, "Load3 goal failed before exhausting routes");
    }
    c.expect(found, "Load3 goal not reported failed");
    c.expect(r.exit_code == 1, "exit code " + std::to_string(r.exit_code));
  }
  return c.ok();
}

// ---------------------------------------------------------------------------
// 4. Agent failure during restoration.

bool criterion_agent_failure(Check& c) {
  const auto t = testing::three_zone_topology();
  std::optional<std::int64_t> t_r;
  const auto baseline = run(t, flisr::default_deployment(t), fault_at("Seg11"));
  for (const auto& e : baseline.log.events()) {
    if (e.kind == EventKind::MessageSend && e.detail["kind"] == "Request" && e.detail["payload"]["load"] == "Load3") {
      t_r = e.t;
      break;
    }
  }
  if (!t_r) {
    c.expect(false, "no Load3 request in the baseline");
    return false;
  }
  auto scenario = fault_at("Seg11");
  scenario.agent_failures.push_back({*t_r + 1, "ROS31"});

  {
    const auto r = run(t, testing::deployment_with_spares(t, {"ROS31"}), scenario);
    bool reformed = false;
    for (const auto* e : milestones(r.log, "TaskTeamReformed")) {
      const auto& d = e->detail["detail"];
      reformed |= d["failed"] == "ROS31" && d["replacement"] == "ROS31B";
    }
    c.expect(reformed, "no reformation onto ROS31B");
    c.expect(r.report.outcome == flisr::Outcome::Restored, "spare case not Restored");
    c.expect(r.report.load("Load3")->source == "Zone3", "Load3 not on Zone3");
  }
  {
    const auto r = run(t, flisr::default_deployment(t), scenario);
    bool degraded = false;
    for (const auto* e : milestones(r.log, "TaskTeamDegraded")) degraded |= e->detail["detail"]["failed"] == "ROS31";
    c.expect(degraded, "no degraded task team");
    c.expect(r.report.load("Load3")->status == "unserved", "Load3 served without a ROS31 agent");
    c.expect(r.report.outcome == flisr::Outcome::Degraded, "no-spare case not Degraded");
    c.expect(testing::replay_violations(t, r.log).empty(), "safety replay flagged the run");
  }
  std::cout << "  failure injected at t=" << *t_r + 1 << "\n";
  return c.ok();
}

// ---------------------------------------------------------------------------
// 5. Determinism.

bool criterion_determinism(Check& c) {
  std::mt19937 rng(77);
  std::vector<sim::BatchItem> items;
  for (int i = 0; i < 12; ++i) {
    auto u = std::make_shared<testing::RandomUtility>(testing::random_utility(rng));
    const auto s = testing::random_scenario(rng, *u);
    const auto a = run(u->topology, u->deployment, s).log.render(sim::LogFormat::Jsonl);
    const auto b = run(u->topology, u->deployment, s).log.render(sim::LogFormat::Jsonl);
    c.expect(a == b, "run " + std::to_string(i) + " differs between repeats");
    items.push_back({std::shared_ptr<const grid::Topology>(u, &u->topology),
                     std::shared_ptr<const flisr::Deployment>(u, &u->deployment), s, {}});
  }
  c.expect(sim::run_batch_serial(items) == sim::run_batch_parallel(items), "serial and parallel batches differ");
  return c.ok();
}

// ---------------------------------------------------------------------------
// 6. Safety over random scenarios.

bool criterion_safety(Check& c) {
  std::mt19937 rng(4242);
  std::map<std::string, int> outcomes;
  constexpr int kRuns = 1000;
  for (int i = 0; i < kRuns; ++i) {
    const auto u = testing::random_utility(rng);
    const auto s = testing::random_scenario(rng, u);
    const auto r = run(u.topology, u.deployment, s);
    ++outcomes[std::string(flisr::to_string(r.report.outcome))];
    c.expect(r.report.violations.empty(), "kernel flagged run " + std::to_string(i));
    c.expect(r.exit_code != 2, "run " + std::to_string(i) + " exited 2");
    for (const auto& v : testing::replay_violations(u.topology, r.log)) {
      c.expect(false, "run " + std::to_string(i) + ": " + v);
    }
  }
  std::cout << "  " << kRuns << " runs:";
  for (const auto& [k, n] : outcomes) std::cout << " " << k << "=" << n;
  std::cout << "\n";
  return c.ok();
}

// ---------------------------------------------------------------------------
// 7. Engine semantics.

// Reference semantics, evaluated by plain recursion. Loops count iterations
// in a per-loop counter and run while it is below their bound.
struct Shape {
  enum Kind { Task, Seq, Par, Choice, Loop } kind = Task;
  std::string id;
  bool pass = true;
  int slices = 1;
  bool guard = true;  // as a choice plan
  int bound = 0;      // as a loop
  std::vector<Shape> kids;
};

GoalState reference(const Shape& s, std::map<std::string, int>& counters) {
  switch (s.kind) {
    case Shape::Task: return s.pass ? GoalState::Passed : GoalState::Failed;
    case Shape::Seq:
      for (const auto& k : s.kids) {
        if (reference(k, counters) == GoalState::Failed) return GoalState::Failed;
      }
      return GoalState::Passed;
    case Shape::Par: {
      bool ok = true;
      for (const auto& k : s.kids) ok &= reference(k, counters) == GoalState::Passed;
      return ok ? GoalState::Passed : GoalState::Failed;
    }
    case Shape::Choice:
      for (const auto& k : s.kids) {
        if (k.guard && reference(k, counters) == GoalState::Passed) return GoalState::Passed;
      }
      return GoalState::Failed;
    case Shape::Loop:
      while (counters[s.id] < s.bound) {
        ++counters[s.id];
        if (reference(s.kids[0], counters) == GoalState::Failed) return GoalState::Failed;
      }
      return GoalState::Passed;
  }
  return GoalState::Failed;
}

// Invocation record for fairness: the executor step, instance, node and
// which slice of the current activation it was.
struct Slice {
  int step;
  int instance;
  std::string node;
  int index;
};

struct Recorder {
  int step = 0;
  std::vector<Slice> slices;
};

ProcessNode build(const Shape& s, int instance, std::shared_ptr<Recorder> rec) {
  std::vector<ProcessNode> kids;
  for (const auto& k : s.kids) kids.push_back(build(k, instance, rec));
  ProcessNode node = [&] {
    switch (s.kind) {
      case Shape::Task: {
        const bool pass = s.pass;
        const int slices = s.slices;
        return ProcessNode::task(s.id, bdi::Behavior{[=](bdi::TaskCall& call) {
                                                       const int used = call.scratch.get_or<int>("n", 0) + 1;
                                                       call.scratch.set("n", used);
                                                       rec->slices.push_back({rec->step, instance, call.node, used});
                                                       if (used < slices) return GoalState::Executing;
                                                       return pass ? GoalState::Passed : GoalState::Failed;
                                                     },
                                                     nullptr});
      }
      case Shape::Seq: return ProcessNode::sequence(s.id, std::move(kids));
      case Shape::Par: return ProcessNode::parallel(s.id, std::move(kids));
      case Shape::Choice: return ProcessNode::choice(s.id, std::move(kids));
      case Shape::Loop: {
        // The counter is bumped by a first task in the body.
        const std::string key = "n_" + s.id;
        const int bound = s.bound;
        auto bump = ProcessNode::task(s.id + "_inc", bdi::Behavior{[key](bdi::TaskCall& call) {
                                                                     call.context.set(key, call.context.get_or(key, 0) + 1);
                                                                     return GoalState::Passed;
                                                                   },
                                                                   nullptr});
        kids.insert(kids.begin(), std::move(bump));
        return ProcessNode::loop(
            s.id, [key, bound](const bdi::DataContext& c) { return c.get_or(key, 0) < bound; },
            ProcessNode::sequence(s.id + "_body", std::move(kids)));
      }
    }
    return ProcessNode::task(s.id, testing::scripted(GoalState::Failed));
  }();
  if (!s.guard) node.when(testing::always(false));
  return node;
}

void collect_ids(const Shape& s, std::vector<std::string>& ids) {
  ids.push_back(s.id);
  for (const auto& k : s.kids) collect_ids(k, ids);
}

// No loops under a parallel: a stopped sibling would leave its counter part
// way, which the reference cannot predict.
Shape random_shape(std::mt19937& rng, int depth, int& next_id, bool under_par = false) {
  Shape s;
  s.id = "n" + std::to_string(next_id++);
  const int pick = depth >= 3 ? 0 : testing::uniform(rng, 0, under_par ? 3 : 4);
  s.kind = static_cast<Shape::Kind>(pick);
  if (s.kind == Shape::Task) {
    s.pass = testing::uniform(rng, 0, 3) != 0;
    s.slices = testing::uniform(rng, 1, 4);
    return s;
  }
  const int n = s.kind == Shape::Loop ? 1 : testing::uniform(rng, 1, 3);
  for (int i = 0; i < n; ++i) {
    s.kids.push_back(random_shape(rng, depth + 1, next_id, under_par || s.kind == Shape::Par));
    if (s.kind == Shape::Choice) s.kids.back().guard = testing::uniform(rng, 0, 4) != 0;
  }
  if (s.kind == Shape::Loop) s.bound = testing::uniform(rng, 0, 3);
  return s;
}

bool terminal(std::optional<GoalState> s) {
  return !s || *s == GoalState::Passed || *s == GoalState::Failed || *s == GoalState::Stopped;
}

bool criterion_engine(Check& c) {
  // Truth tables over child outcomes.
  int cases = 0;
  auto check_shape = [&](const Shape& root, const std::string& label) {
    ++cases;
    std::map<std::string, int> counters;
    const auto want = reference(root, counters);
    auto rec = std::make_shared<Recorder>();
    bdi::ProcessInstance inst(testing::model_of(build(root, 0, rec)));
    const auto got = bdi::execute_node(inst, root.id);
    c.expect(got == want, label + ": expected " + std::string(bdi::to_string(want)) + ", got " +
                              std::string(bdi::to_string(got)));
  };
  for (int kind : {Shape::Seq, Shape::Par, Shape::Choice}) {
    for (int n = 1; n <= 3; ++n) {
      for (int outcomes = 0; outcomes < (1 << n); ++outcomes) {
        for (int guards = 0; guards < (kind == Shape::Choice ? (1 << n) : 1); ++guards) {
          Shape root;
          root.kind = static_cast<Shape::Kind>(kind);
          root.id = "root";
          std::string label = "kind " + std::to_string(kind) + " children";
          for (int i = 0; i < n; ++i) {
            Shape k;
            k.id = "c" + std::to_string(i);
            k.pass = (outcomes >> i) & 1;
            k.slices = 1 + i % 2;
            k.guard = kind != Shape::Choice || !((guards >> i) & 1);
            label += std::string(" ") + (k.guard ? "" : "!") + (k.pass ? "P" : "F");
            root.kids.push_back(k);
          }
          check_shape(root, label);
        }
      }
    }
  }
  for (int bound = 0; bound <= 3; ++bound) {
    for (bool pass : {true, false}) {
      Shape body;
      body.id = "body";
      body.pass = pass;
      Shape root;
      root.kind = Shape::Loop;
      root.id = "root";
      root.bound = bound;
      root.kids.push_back(body);
      check_shape(root, "loop bound " + std::to_string(bound) + (pass ? " P" : " F"));
    }
  }
  const int table_cases = cases;

  // Random shapes, several instances on one executor.
  std::mt19937 rng(99);
  for (int round = 0; round < 200; ++round) {
    auto rec = std::make_shared<Recorder>();
    bdi::Executor ex;
    std::vector<Shape> shapes;
    std::vector<bdi::Executor::Handle> handles;
    const int count = testing::uniform(rng, 1, 4);
    for (int i = 0; i < count; ++i) {
      int next_id = 0;
      shapes.push_back(random_shape(rng, 0, next_id));
      handles.push_back(ex.add(testing::model_of(build(shapes.back(), i, rec))));
    }
    for (int step = 0; step < 2000; ++step) {
      const bool done = std::all_of(handles.begin(), handles.end(), [&](auto h) { return ex.instance(h).finished(); });
      if (done) break;
      rec->step = step;
      ex.step();
    }
    const std::string at = "round " + std::to_string(round);
    for (int i = 0; i < count; ++i) {
      const auto& inst = ex.instance(handles[i]);
      c.expect(inst.finished(), at + ": instance did not finish");
      std::map<std::string, int> counters;
      c.expect(inst.root_status() == reference(shapes[i], counters), at + ": outcome differs from reference");
      std::vector<std::string> ids;
      collect_ids(shapes[i], ids);
      for (const auto& id : ids) c.expect(terminal(inst.status(id)), at + ": node " + id + " left running");
    }
    // At most one slice per task per step, and an Executing task gets a
    // slice on every step until it finishes.
    std::set<std::tuple<int, int, std::string>> seen;
    std::set<std::tuple<int, int, std::string, int>> slices;
    for (const auto& s : rec->slices) {
      c.expect(seen.insert({s.step, s.instance, s.node}).second, at + ": two slices in one step for " + s.node);
      slices.insert({s.step, s.instance, s.node, s.index});
    }
    for (const auto& s : rec->slices) {
      if (s.index > 1) {
        c.expect(slices.contains({s.step - 1, s.instance, s.node, s.index - 1}), at + ": " + s.node + " skipped a step");
      }
    }
  }
  std::cout << "  " << table_cases << " truth-table cases, 200 random executor rounds\n";
  return c.ok();
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<bool(Check&)> run;
  };
  const std::vector<Criterion> criteria{
      {"reference trace on the three-zone utility", criterion_reference_trace},
      {"fault location matches the placement oracle", criterion_location},
      {"alternative route after a capacity denial", criterion_alternative_route},
      {"agent failure during restoration", criterion_agent_failure},
      {"byte-identical logs for identical inputs", criterion_determinism},
      {"no safety violation over random scenarios", criterion_safety},
      {"engine semantics, fairness and termination", criterion_engine},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    bool ok = false;
    try {
      ok = criteria[i].run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    ok = ok && c.ok();
    std::cout << (ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].name << "\n";
    for (const auto& n : c.notes) std::cout << "  - " << n << "\n";
    if (!ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
