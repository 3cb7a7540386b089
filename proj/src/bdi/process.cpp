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

#include "gridteam/bdi/process.hpp"

#include <algorithm>

#include "gridteam/bdi/executor.hpp"

namespace gridteam::bdi {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Task: return "Task";
    case NodeKind::Sequence: return "Sequence";
    case NodeKind::Parallel: return "Parallel";
    case NodeKind::Choice: return "Choice";
    case NodeKind::Loop: return "Loop";
  }
  return "?";
}

std::string_view to_string(GoalState state) {
  switch (state) {
    case GoalState::Executing: return "Executing";
    case GoalState::Blocked: return "Blocked";
    case GoalState::Passed: return "Passed";
    case GoalState::Failed: return "Failed";
    case GoalState::Stopped: return "Stopped";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// ProcessNode

ProcessNode ProcessNode::task(std::string id, Behavior behavior) {
  ProcessNode n(std::move(id), NodeKind::Task);
  n.behavior_ = std::move(behavior);
  return n;
}

ProcessNode ProcessNode::sequence(std::string id, std::vector<ProcessNode> children) {
  ProcessNode n(std::move(id), NodeKind::Sequence);
  n.children_ = std::move(children);
  return n;
}

ProcessNode ProcessNode::parallel(std::string id, std::vector<ProcessNode> children) {
  ProcessNode n(std::move(id), NodeKind::Parallel);
  n.children_ = std::move(children);
  return n;
}

ProcessNode ProcessNode::choice(std::string id, std::vector<ProcessNode> plans) {
  ProcessNode n(std::move(id), NodeKind::Choice);
  n.children_ = std::move(plans);
  return n;
}

ProcessNode ProcessNode::loop(std::string id, Guard condition, ProcessNode body) {
  ProcessNode n(std::move(id), NodeKind::Loop);
  n.condition_ = std::move(condition);
  n.children_.push_back(std::move(body));
  return n;
}

ProcessNode& ProcessNode::when(Guard guard) & {
  guard_ = std::move(guard);
  return *this;
}

ProcessNode&& ProcessNode::when(Guard guard) && {
  guard_ = std::move(guard);
  return std::move(*this);
}

// ---------------------------------------------------------------------------
// ProcessModel

ProcessModel::ProcessModel(const ProcessNode& root) { flatten(root, npos); }

std::size_t ProcessModel::flatten(const ProcessNode& node, std::size_t parent) {
  if (node.id().empty()) throw ModelError("process node with empty id");
  switch (node.kind()) {
    case NodeKind::Task:
      if (!node.children().empty()) throw ModelError("task '" + node.id() + "' has children");
      if (!node.behavior().step) throw ModelError("task '" + node.id() + "' has no behaviour");
      break;
    case NodeKind::Sequence:
    case NodeKind::Parallel:
    case NodeKind::Choice:
      if (node.children().empty()) {
        throw ModelError(std::string(to_string(node.kind())) + " '" + node.id() +
                         "' needs at least one child");
      }
      break;
    case NodeKind::Loop:
      if (node.children().size() != 1) throw ModelError("loop '" + node.id() + "' needs one body");
      if (!node.condition()) throw ModelError("loop '" + node.id() + "' has no continuation guard");
      break;
  }

  const std::size_t index = nodes_.size();
  if (!by_id_.emplace(node.id(), index).second) {
    throw ModelError("duplicate process node id '" + node.id() + "'");
  }
  nodes_.push_back(Node{node.id(), node.kind(), parent, {}, node.guard(), node.condition(), node.behavior()});

  std::vector<std::size_t> children;
  children.reserve(node.children().size());
  for (const auto& child : node.children()) children.push_back(flatten(child, index));
  nodes_[index].children = std::move(children);
  return index;
}

std::size_t ProcessModel::index_of(std::string_view id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw UnknownNode(id);
  return it->second;
}

std::optional<std::size_t> ProcessModel::find(std::string_view id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// ProcessInstance

ProcessInstance::ProcessInstance(std::shared_ptr<const ProcessModel> model, DataContext context)
    : model_(std::move(model)), context_(std::move(context)) {
  if (!model_) throw ModelError("process instance without a model");
  nodes_.resize(model_->size());
}

std::optional<GoalState> ProcessInstance::status(std::string_view id) const {
  return nodes_[model_->index_of(id)].state;
}

bool ProcessInstance::finished() const {
  return nodes_.front().state && is_terminal(*nodes_.front().state);
}

std::uint32_t ProcessInstance::activations(std::string_view id) const {
  return nodes_[model_->index_of(id)].activation;
}

std::vector<std::string> ProcessInstance::applicable_plans(std::string_view choice_id) const {
  const std::size_t index = model_->index_of(choice_id);
  if (model_->node(index).kind != NodeKind::Choice) {
    throw ModelError("'" + std::string(choice_id) + "' is not a choice node");
  }
  std::vector<std::string> out;
  for (std::size_t child : applicable(index)) out.push_back(model_->node(child).id);
  return out;
}

bool ProcessInstance::guard_holds(const Guard& guard) const {
  if (!guard) return true;
  try {
    return guard(context_);
  } catch (const std::exception&) {
    return false;
  }
}

std::vector<std::size_t> ProcessInstance::applicable(std::size_t choice) const {
  std::vector<std::size_t> out;
  const auto& failed = nodes_[choice].failed_plans;
  for (std::size_t child : model_->node(choice).children) {
    if (failed.contains(child)) continue;
    if (guard_holds(model_->node(child).guard)) out.push_back(child);
  }
  return out;
}

void ProcessInstance::set_state(std::size_t index, GoalState state) {
  nodes_[index].state = state;
  trace_.push_back(Transition{model_->node(index).id, nodes_[index].activation, state});
}

bool ProcessInstance::parent_executing(std::size_t index) const {
  const std::size_t parent = model_->node(index).parent;
  return parent != ProcessModel::npos && nodes_[parent].state == GoalState::Executing;
}

void ProcessInstance::activate(std::size_t index) {
  const auto& node = model_->node(index);
  auto& ns = nodes_[index];
  ++ns.activation;
  ns.cursor = 0;
  ns.passed = 0;
  ns.failed_plans.clear();
  ns.scratch.clear();
  set_state(index, GoalState::Executing);

  switch (node.kind) {
    case NodeKind::Task:
      if (executor_ == nullptr) throw std::logic_error("task activated outside an executor");
      executor_->enqueue(handle_, index, ns.activation);
      break;
    case NodeKind::Sequence:
      activate(node.children.front());
      break;
    case NodeKind::Parallel:
      for (std::size_t child : node.children) {
        if (nodes_[index].state != GoalState::Executing) break;
        activate(child);
      }
      break;
    case NodeKind::Choice: {
      const auto plans = applicable(index);
      if (plans.empty()) {
        finish(index, GoalState::Failed);
      } else {
        ns.cursor = plans.front();
        activate(plans.front());
      }
      break;
    }
    case NodeKind::Loop:
      if (guard_holds(node.condition)) {
        activate(node.children.front());
      } else {
        finish(index, GoalState::Passed);
      }
      break;
  }
}

void ProcessInstance::finish(std::size_t index, GoalState state) {
  set_state(index, state);
  if (model_->node(index).kind == NodeKind::Choice) nodes_[index].failed_plans.clear();
  if (parent_executing(index)) child_finished(model_->node(index).parent, index, state);
}

void ProcessInstance::child_finished(std::size_t parent, std::size_t child, GoalState state) {
  const auto& node = model_->node(parent);
  auto& ns = nodes_[parent];
  const bool passed = state == GoalState::Passed;

  switch (node.kind) {
    case NodeKind::Task:
      break;
    case NodeKind::Sequence: {
      if (!passed) {
        finish(parent, GoalState::Failed);
        break;
      }
      auto it = std::find(node.children.begin(), node.children.end(), child);
      ++it;
      if (it == node.children.end()) {
        finish(parent, GoalState::Passed);
      } else {
        activate(*it);
      }
      break;
    }
    case NodeKind::Parallel:
      if (!passed) {
        for (std::size_t sibling : node.children) {
          if (sibling != child) stop_subtree(sibling);
        }
        finish(parent, GoalState::Failed);
      } else if (++ns.passed == node.children.size()) {
        finish(parent, GoalState::Passed);
      }
      break;
    case NodeKind::Choice: {
      if (passed) {
        finish(parent, GoalState::Passed);
        break;
      }
      ns.failed_plans.insert(child);
      const auto plans = applicable(parent);
      if (plans.empty()) {
        finish(parent, GoalState::Failed);
      } else {
        ns.cursor = plans.front();
        activate(plans.front());
      }
      break;
    }
    case NodeKind::Loop:
      if (!passed) {
        finish(parent, GoalState::Failed);
      } else if (guard_holds(node.condition)) {
        reset_subtree(child);
        activate(child);
      } else {
        finish(parent, GoalState::Passed);
      }
      break;
  }
}

void ProcessInstance::stop_subtree(std::size_t index) {
  auto& ns = nodes_[index];
  if (!ns.state || is_terminal(*ns.state)) return;
  set_state(index, GoalState::Stopped);
  ns.failed_plans.clear();
  for (std::size_t child : model_->node(index).children) stop_subtree(child);
}

void ProcessInstance::reset_subtree(std::size_t index) {
  auto& ns = nodes_[index];
  ns.state.reset();
  ns.cursor = 0;
  ns.passed = 0;
  ns.failed_plans.clear();
  ns.scratch.clear();
  for (std::size_t child : model_->node(index).children) reset_subtree(child);
}

}  // namespace gridteam::bdi
