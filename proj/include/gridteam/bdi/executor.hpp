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

#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <string_view>
#include <vector>

#include "gridteam/bdi/process.hpp"

namespace gridteam::bdi {

/// Time-sliced executor over a set of process instances.
///
/// Each step() gives every Executing task exactly one slice, in FIFO order of
/// activation, then resolves control-node transitions. Tasks activated while
/// a step is resolving get their first slice on the next step. Blocked tasks
/// are parked and cost nothing until their ready predicate holds.
class Executor {
 public:
  using Handle = std::size_t;

  Executor() = default;
  Executor(const Executor&) = delete;
  Executor& operator=(const Executor&) = delete;
  Executor(Executor&&) = delete;
  ~Executor();

  /// Create an owned instance and activate its root.
  Handle add(std::shared_ptr<const ProcessModel> model, DataContext context = {});
  /// Drive an instance owned elsewhere. Nothing is activated.
  Handle attach(ProcessInstance& instance);
  /// Activate a node that has not started in its current iteration.
  void start(Handle handle, std::string_view node_id);

  /// Returns the number of behaviour invocations performed.
  std::size_t step();

  ProcessInstance& instance(Handle handle) { return *instances_.at(handle); }
  const ProcessInstance& instance(Handle handle) const { return *instances_.at(handle); }
  std::size_t instance_count() const { return instances_.size(); }

  std::size_t runnable_count() const;
  std::size_t blocked_count() const;

 private:
  friend class ProcessInstance;

  struct TaskRef {
    Handle instance;
    std::size_t node;
    std::uint32_t activation;
  };

  void enqueue(Handle instance, std::size_t node, std::uint32_t activation);
  bool live(const TaskRef& ref, GoalState expected) const;

  std::vector<ProcessInstance*> instances_;
  std::vector<std::unique_ptr<ProcessInstance>> owned_;
  std::deque<TaskRef> runnable_;
  std::vector<TaskRef> blocked_;
};

/// Run one node of an instance to a terminal state on a private executor.
///
/// Returns Blocked when every remaining task is waiting on something that
/// cannot change without outside input, or when `max_steps` is exhausted.
GoalState execute_node(ProcessInstance& instance, std::string_view node_id,
                       std::size_t max_steps = 100000);

}  // namespace gridteam::bdi
