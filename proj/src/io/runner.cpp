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

#include "gridteam/io/runner.hpp"

#include <fstream>
#include <iostream>

#include "gridteam/flisr/report.hpp"
#include "gridteam/io/scenario_io.hpp"
#include "gridteam/io/topology_io.hpp"
#include "gridteam/sim/simulation.hpp"

namespace gridteam::io {

namespace {

void print(const std::vector<ConfigDiagnostic>& diagnostics, std::ostream& err) {
  for (const auto& d : diagnostics) err << d.to_string() << '\n';
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError({ConfigDiagnostic{path.string(), "", "cannot write file", {}, {}}});
  out << text;
  if (!out) throw ConfigError({ConfigDiagnostic{path.string(), "", "write failed", {}, {}}});
}

}  // namespace

int validate(const std::filesystem::path& topology, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = read_file(topology);
  } catch (const ConfigError& e) {
    print(e.diagnostics(), err);
    return kExitConfig;
  }
  const auto diagnostics = validate_topology(text, topology.string());
  if (!diagnostics.empty()) {
    print(diagnostics, err);
    return kExitConfig;
  }
  const auto doc = parse_topology(text, topology.string());
  out << topology.string() << ": ok (" << doc.topology.sources().size() << " sources, "
      << doc.topology.switches().size() << " switches, " << doc.topology.loads().size() << " loads, "
      << doc.deployment.agents.size() << " agents)\n";
  return kExitRestored;
}

int run_scenario(const RunConfig& config, std::ostream& out, std::ostream& err) {
  sim::RunResult result;
  try {
    const std::string text = read_file(config.topology);
    const auto diagnostics = validate_topology(text, config.topology.string());
    if (!diagnostics.empty()) {
      print(diagnostics, err);
      return kExitConfig;
    }
    const auto doc = parse_topology(text, config.topology.string());
    const auto scenario = load_scenario(config.scenario);

    sim::SimConfig sim_config;
    sim_config.protection = doc.protection;
    sim_config = sim_config.with(scenario);
    if (config.seed) sim_config.seed = *config.seed;
    if (config.latency) sim_config.latency = *config.latency;
    if (config.max_ticks) sim_config.max_ticks = *config.max_ticks;
    sim::check_config(sim_config);
    sim::check_scenario(doc.topology, doc.deployment, scenario);

    result = sim::run(doc.topology, doc.deployment, scenario, sim_config);
  } catch (const ConfigError& e) {
    print(e.diagnostics(), err);
    return kExitConfig;
  } catch (const sim::ScenarioError& e) {
    err << config.scenario.string() << ": " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  const std::string report = flisr::to_json(result.report).dump(2) + "\n";
  try {
    const std::string log = result.log.render(config.format);
    if (config.log) {
      write_file(*config.log, log);
    } else {
      out << log;
    }
    if (config.report) {
      write_file(*config.report, report);
    } else {
      (config.log ? out : err) << report;
    }
  } catch (const ConfigError& e) {
    print(e.diagnostics(), err);
    return kExitConfig;
  }
  for (const auto& v : result.report.violations) err << "invariant violation: " << v << '\n';
  return result.exit_code;
}

}  // namespace gridteam::io
