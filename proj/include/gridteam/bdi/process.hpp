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

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gridteam/bdi/context.hpp"

namespace gridteam::bdi {

enum class NodeKind { Task, Sequence, Parallel, Choice, Loop };

/// Passed, Failed and Stopped are terminal for a node instance.
enum class GoalState { Executing, Blocked, Passed, Failed, Stopped };

std::string_view to_string(NodeKind kind);
std::string_view to_string(GoalState state);

constexpr bool is_terminal(GoalState s) {
  return s == GoalState::Passed || s == GoalState::Failed || s == GoalState::Stopped;
}

using Guard = std::function<bool(const DataContext&)>;

/// Handed to a task behaviour on every slice it receives.
struct TaskCall {
  DataContext& context;      // shared by the whole execution
  DataContext& scratch;      // private to this activation of the task
  const std::string& node;
  std::uint32_t activation;  // 1 for the first activation, bumped on each re-activation
};

/// The goal-specific part of a task node.
///
/// `step` is invoked once per executor slice and reports the node's state:
/// Executing (wants another slice), Blocked (waiting, e.g. on a message),
/// Passed or Failed. A Blocked task is only resumed once `ready` returns true;
/// without a `ready` predicate it is resumed on the next step.
struct Behavior {
  std::function<GoalState(TaskCall&)> step;
  std::function<bool(const DataContext&)> ready;
};

class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownNode : public std::out_of_range {
 public:
  explicit UnknownNode(std::string_view id)
      : std::out_of_range("unknown process node '" + std::string(id) + "'") {}
};

/// Value-type node of a goal/process model tree.
class ProcessNode {
 public:
  static ProcessNode task(std::string id, Behavior behavior);
  static ProcessNode sequence(std::string id, std::vector<ProcessNode> children);
  static ProcessNode parallel(std::string id, std::vector<ProcessNode> children);
  /// Each child is a plan; its guard (see when()) decides applicability.
  static ProcessNode choice(std::string id, std::vector<ProcessNode> plans);
  /// While-style loop: `condition` is checked before every iteration of `body`.
  static ProcessNode loop(std::string id, Guard condition, ProcessNode body);

  /// Attach a guard. Only meaningful for Choice plans.
  ProcessNode& when(Guard guard) &;
  ProcessNode&& when(Guard guard) &&;

  const std::string& id() const { return id_; }
  NodeKind kind() const { return kind_; }
  const std::vector<ProcessNode>& children() const { return children_; }
  const Guard& guard() const { return guard_; }
  const Guard& condition() const { return condition_; }
  const Behavior& behavior() const { return behavior_; }

 private:
  ProcessNode(std::string id, NodeKind kind) : id_(std::move(id)), kind_(kind) {}

  std::string id_;
  NodeKind kind_;
  std::vector<ProcessNode> children_;
  Guard guard_;
  Guard condition_;  // loops only
  Behavior behavior_;
};

/// Immutable, validated, flattened form of a ProcessNode tree.
class ProcessModel {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct Node {
    std::string id;
    NodeKind kind;
    std::size_t parent = npos;
    std::vector<std::size_t> children;
    Guard guard;
    Guard condition;
    Behavior behavior;
  };

  /// Throws ModelError on duplicate ids or malformed control nodes.
  explicit ProcessModel(const ProcessNode& root);

  std::size_t size() const { return nodes_.size(); }
  const Node& node(std::size_t index) const { return nodes_.at(index); }
  std::size_t index_of(std::string_view id) const;
  std::optional<std::size_t> find(std::string_view id) const;
  const std::string& root_id() const { return nodes_.front().id; }

 private:
  std::size_t flatten(const ProcessNode& node, std::size_t parent);

  std::vector<Node> nodes_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
};

struct Transition {
  std::string node;
  std::uint32_t activation;
  GoalState state;

  friend bool operator==(const Transition&, const Transition&) = default;
};

class Executor;

/// One execution of a process model: per-node goal states plus the shared
/// data context. Progress is driven by an Executor.
class ProcessInstance {
 public:
  explicit ProcessInstance(std::shared_ptr<const ProcessModel> model, DataContext context = {});

  ProcessInstance(const ProcessInstance&) = delete;
  ProcessInstance& operator=(const ProcessInstance&) = delete;

  const ProcessModel& model() const { return *model_; }
  DataContext& context() { return context_; }
  const DataContext& context() const { return context_; }

  /// nullopt until the node has been activated in the current iteration.
  std::optional<GoalState> status(std::string_view id) const;
  std::optional<GoalState> root_status() const { return nodes_.front().state; }
  bool finished() const;

  /// Guard-true plans of a Choice node, in declaration order, minus plans
  /// that already failed in the node's current attempt.
  std::vector<std::string> applicable_plans(std::string_view choice_id) const;

  /// Number of times a node has been activated over the whole execution.
  std::uint32_t activations(std::string_view id) const;

  const std::vector<Transition>& trace() const { return trace_; }

 private:
  friend class Executor;

  struct NodeState {
    std::optional<GoalState> state;
    std::uint32_t activation = 0;
    std::size_t cursor = 0;
    std::size_t passed = 0;
    std::set<std::size_t> failed_plans;
    DataContext scratch;
  };

  std::vector<std::size_t> applicable(std::size_t choice) const;
  void set_state(std::size_t index, GoalState state);
  void activate(std::size_t index);
  void finish(std::size_t index, GoalState state);
  void child_finished(std::size_t parent, std::size_t child, GoalState state);
  void stop_subtree(std::size_t index);
  void reset_subtree(std::size_t index);
  bool parent_executing(std::size_t index) const;
  bool guard_holds(const Guard& guard) const;

  std::shared_ptr<const ProcessModel> model_;
  DataContext context_;
  std::vector<NodeState> nodes_;
  std::vector<Transition> trace_;
  Executor* executor_ = nullptr;
  std::size_t handle_ = 0;
};

}  // namespace gridteam::bdi
