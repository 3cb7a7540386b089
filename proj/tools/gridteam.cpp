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

// gridteam: command-line front end for the FLISR simulator.

#include <iostream>

#include "CLI11.hpp"
#include "gridteam/io/runner.hpp"

int main(int argc, char** argv) {
  using gridteam::io::RunConfig;

  CLI::App app{"Agent-team FLISR simulator for radial distribution networks"};
  app.require_subcommand(1);

  RunConfig run;
  std::string format = "jsonl";
  std::string log_path;
  std::string report_path;
  std::uint64_t seed = 0;
  std::int64_t latency = 0;
  std::int64_t max_ticks = 0;
  auto* run_cmd = app.add_subcommand("run", "Simulate a scenario and write the event log");
  run_cmd->add_option("--topology", run.topology, "Topology file")->required();
  run_cmd->add_option("--scenario", run.scenario, "Scenario file")->required();
  auto* seed_opt = run_cmd->add_option("--seed", seed, "Seed recorded in the log header");
  auto* latency_opt =
      run_cmd->add_option("--latency", latency, "Message latency in ticks")->check(CLI::PositiveNumber);
  auto* ticks_opt = run_cmd->add_option("--max-ticks", max_ticks, "Tick budget")->check(CLI::PositiveNumber);
  run_cmd->add_option("--log", log_path, "Event log file (default: stdout)");
  run_cmd->add_option("--format", format, "Log format")->check(CLI::IsMember({"jsonl", "text"}));
  run_cmd->add_option("--report", report_path, "Report file (default: stdout if --log is set, else stderr)");

  std::string topology;
  auto* validate_cmd = app.add_subcommand("validate", "Check a topology file");
  validate_cmd->add_option("--topology", topology, "Topology file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gridteam::io::kExitConfig;
  }

  if (*validate_cmd) return gridteam::io::validate(topology, std::cout, std::cerr);

  if (*seed_opt) run.seed = seed;
  if (*latency_opt) run.latency = latency;
  if (*ticks_opt) run.max_ticks = max_ticks;
  if (!log_path.empty()) run.log = log_path;
  if (!report_path.empty()) run.report = report_path;
  run.format = format == "text" ? gridteam::sim::LogFormat::Text : gridteam::sim::LogFormat::Jsonl;
  return gridteam::io::run_scenario(run, std::cout, std::cerr);
}
