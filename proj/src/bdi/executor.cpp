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

#include "gridteam/bdi/executor.hpp"

#include <stdexcept>
#include <utility>

namespace gridteam::bdi {

Executor::~Executor() {
  for (ProcessInstance* inst : instances_) {
    if (inst->executor_ == this) inst->executor_ = nullptr;
  }
}

Executor::Handle Executor::add(std::shared_ptr<const ProcessModel> model, DataContext context) {
  owned_.push_back(std::make_unique<ProcessInstance>(std::move(model), std::move(context)));
  const Handle handle = attach(*owned_.back());
  owned_.back()->activate(0);
  return handle;
}

Executor::Handle Executor::attach(ProcessInstance& instance) {
  if (instance.executor_ != nullptr && instance.executor_ != this) {
    throw std::logic_error("process instance already attached to another executor");
  }
  const Handle handle = instances_.size();
  instances_.push_back(&instance);
  instance.executor_ = this;
  instance.handle_ = handle;
  return handle;
}

void Executor::start(Handle handle, std::string_view node_id) {
  ProcessInstance& inst = instance(handle);
  const std::size_t index = inst.model().index_of(node_id);
  if (inst.nodes_[index].state) {
    throw std::logic_error("process node '" + std::string(node_id) + "' already started");
  }
  inst.activate(index);
}

void Executor::enqueue(Handle instance, std::size_t node, std::uint32_t activation) {
  runnable_.push_back(TaskRef{instance, node, activation});
}

bool Executor::live(const TaskRef& ref, GoalState expected) const {
  const auto& ns = instances_[ref.instance]->nodes_[ref.node];
  return ns.activation == ref.activation && ns.state == expected;
}

std::size_t Executor::runnable_count() const {
  std::size_t n = 0;
  for (const auto& ref : runnable_) n += live(ref, GoalState::Executing) ? 1 : 0;
  return n;
}

std::size_t Executor::blocked_count() const {
  std::size_t n = 0;
  for (const auto& ref : blocked_) n += live(ref, GoalState::Blocked) ? 1 : 0;
  return n;
}

std::size_t Executor::step() {
  // Wake parked tasks whose wait condition now holds. Waking costs no slice.
  std::vector<TaskRef> still_blocked;
  for (const auto& ref : blocked_) {
    if (!live(ref, GoalState::Blocked)) continue;
    ProcessInstance& inst = *instances_[ref.instance];
    const auto& ready = inst.model().node(ref.node).behavior.ready;
    bool wake = true;
    if (ready) {
      try {
        wake = ready(inst.context());
      } catch (const std::exception&) {
        wake = true;
      }
    }
    if (wake) {
      inst.set_state(ref.node, GoalState::Executing);
      runnable_.push_back(ref);
    } else {
      still_blocked.push_back(ref);
    }
  }
  blocked_ = std::move(still_blocked);

  std::vector<TaskRef> batch;
  batch.reserve(runnable_.size());
  for (const auto& ref : runnable_) {
    if (live(ref, GoalState::Executing)) batch.push_back(ref);
  }
  runnable_.clear();

  std::vector<std::pair<TaskRef, GoalState>> results;
  results.reserve(batch.size());
  for (const auto& ref : batch) {
    ProcessInstance& inst = *instances_[ref.instance];
    const auto& node = inst.model().node(ref.node);
    auto& ns = inst.nodes_[ref.node];
    TaskCall call{inst.context(), ns.scratch, node.id, ns.activation};
    GoalState outcome;
    try {
      outcome = node.behavior.step(call);
    } catch (const std::exception& e) {
      auto& errors = inst.context()["errors"];
      if (!errors.is_array()) errors = DataContext::Value::array();
      errors.push_back({{"node", node.id}, {"what", e.what()}});
      outcome = GoalState::Failed;
    }
    results.emplace_back(ref, outcome);
  }

  // Resolve in FIFO order. A task stopped by an earlier resolution in this
  // same step loses its result.
  for (const auto& [ref, outcome] : results) {
    if (!live(ref, GoalState::Executing)) continue;
    ProcessInstance& inst = *instances_[ref.instance];
    switch (outcome) {
      case GoalState::Executing:
        runnable_.push_back(ref);
        break;
      case GoalState::Blocked:
        inst.set_state(ref.node, GoalState::Blocked);
        blocked_.push_back(ref);
        break;
      case GoalState::Passed:
      case GoalState::Failed:
      case GoalState::Stopped:
        inst.finish(ref.node, outcome);
        break;
    }
  }
  return results.size();
}

GoalState execute_node(ProcessInstance& instance, std::string_view node_id, std::size_t max_steps) {
  if (auto s = instance.status(node_id); s && is_terminal(*s)) {
    throw std::logic_error("process node '" + std::string(node_id) + "' is already terminal");
  }
  Executor executor;
  const auto handle = executor.attach(instance);
  if (!instance.status(node_id)) executor.start(handle, node_id);

  for (std::size_t i = 0; i < max_steps; ++i) {
    if (auto s = instance.status(node_id); s && is_terminal(*s)) return *s;
    if (executor.step() == 0 && executor.runnable_count() == 0) break;
  }
  if (auto s = instance.status(node_id); s && is_terminal(*s)) return *s;
  return GoalState::Blocked;
}

}  // namespace gridteam::bdi
