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

#include "gridteam/sim/batch.hpp"

#include <omp.h>

#include <exception>

#include "gridteam/sim/simulation.hpp"

namespace gridteam::sim {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

BatchSummary run_one(const BatchItem& item) {
  BatchSummary s;
  try {
    const auto r = run(*item.topology, *item.deployment, item.scenario, item.config.with(item.scenario));
    s.exit_code = r.exit_code;
    s.outcome = r.report.outcome;
    s.ticks = r.ticks;
    s.events = r.log.size();
    s.log_digest = fnv1a(r.log.render(LogFormat::Jsonl));
    s.violations = r.report.violations;
  } catch (const std::exception& e) {
    s.exit_code = 3;
    s.error = e.what();
  }
  return s;
}

std::vector<BatchSummary> run_batch_serial(const std::vector<BatchItem>& items) {
  std::vector<BatchSummary> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(run_one(item));
  return out;
}

std::vector<BatchSummary> run_batch_parallel(const std::vector<BatchItem>& items, int threads) {
  std::vector<BatchSummary> out(items.size());
  const auto n = static_cast<std::int64_t>(items.size());
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(team)
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = run_one(items[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace gridteam::sim
