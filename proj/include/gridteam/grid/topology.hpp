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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gridteam::grid {

enum class SwitchKind { CB, ROS, TIE };
enum class Position { Open, Closed };

std::string_view to_string(SwitchKind kind);
std::string_view to_string(Position position);
std::optional<SwitchKind> parse_switch_kind(std::string_view text);
std::optional<Position> parse_position(std::string_view text);

struct ZoneSubstation {
  std::string id;
  std::int64_t capacity_kw = 0;
  std::string segment;  // bus segment the source feeds
};

struct SwitchingUnit {
  std::string id;
  SwitchKind kind = SwitchKind::ROS;
  Position normal = Position::Closed;
  std::array<std::string, 2> ends;
};

struct Segment {
  std::string id;
  std::vector<std::string> loads;  // filled in by Topology
};

struct Load {
  std::string id;
  std::int64_t demand_kw = 0;
  std::string segment;
};

/// Predefined alternative supply path: switches ordered from the load's
/// segment toward `source`.
struct RestorationRoute {
  std::string source;
  std::vector<std::string> path;

  friend bool operator==(const RestorationRoute&, const RestorationRoute&) = default;
};

using RouteTable = std::map<std::string, std::vector<RestorationRoute>>;

class TopologyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownSwitch : public std::out_of_range {
 public:
  explicit UnknownSwitch(std::string_view id)
      : std::out_of_range("unknown switch '" + std::string(id) + "'") {}
};

class UnknownLoad : public std::out_of_range {
 public:
  explicit UnknownLoad(std::string_view id)
      : std::out_of_range("unknown load '" + std::string(id) + "'") {}
};

class UnknownSegment : public std::out_of_range {
 public:
  explicit UnknownSegment(std::string_view id)
      : std::out_of_range("unknown segment '" + std::string(id) + "'") {}
};

/// An invariant violation; `where` is a JSON pointer into the topology document.
struct Diagnostic {
  std::string where;
  std::string message;
};

/// Segments are vertices, switching units are edges. Immutable once built.
class Topology {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Throws TopologyError on duplicate ids or dangling references. Electrical
  /// invariants are reported by check() instead.
  Topology(std::vector<ZoneSubstation> sources, std::vector<Segment> segments,
           std::vector<SwitchingUnit> switches, std::vector<Load> loads, RouteTable routes);

  /// Radial normal configuration, normal positions by kind, connectivity,
  /// route shape and capacity headroom.
  std::vector<Diagnostic> check() const;

  const std::vector<ZoneSubstation>& sources() const { return sources_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const std::vector<SwitchingUnit>& switches() const { return switches_; }
  const std::vector<Load>& loads() const { return loads_; }
  const RouteTable& routes() const { return routes_; }

  std::size_t switch_index(std::string_view id) const;
  std::size_t segment_index(std::string_view id) const;
  std::size_t load_index(std::string_view id) const;
  std::size_t source_index(std::string_view id) const;
  bool has_switch(std::string_view id) const { return switch_ids_.contains(id); }
  bool has_segment(std::string_view id) const { return segment_ids_.contains(id); }
  bool has_load(std::string_view id) const { return load_ids_.contains(id); }
  bool has_source(std::string_view id) const { return source_ids_.contains(id); }

  const SwitchingUnit& switch_unit(std::string_view id) const { return switches_[switch_index(id)]; }
  const Load& load(std::string_view id) const { return loads_[load_index(id)]; }
  const ZoneSubstation& source(std::string_view id) const { return sources_[source_index(id)]; }

  /// Switch indices touching a segment.
  const std::vector<std::size_t>& incident(std::size_t segment) const { return incident_[segment]; }
  std::size_t far_end(std::size_t sw, std::size_t segment) const;
  std::size_t end_index(std::size_t sw, std::size_t which) const { return ends_[sw][which]; }
  /// Source feeding a segment directly, if any.
  std::optional<std::size_t> source_at(std::size_t segment) const;

  /// Shape of the normal-position network, rooted at the sources.
  struct NormalTree {
    std::vector<std::optional<std::size_t>> segment_source;
    std::vector<std::size_t> segment_depth;      // hops from the source bus
    std::vector<std::size_t> parent_switch;      // npos at a source bus
    std::vector<std::size_t> switch_upstream;    // npos if not on a tree edge
    std::vector<std::size_t> switch_downstream;  // npos if not on a tree edge
  };
  const NormalTree& normal_tree() const { return tree_; }

 private:
  void build_tree();

  std::vector<ZoneSubstation> sources_;
  std::vector<Segment> segments_;
  std::vector<SwitchingUnit> switches_;
  std::vector<Load> loads_;
  RouteTable routes_;

  std::map<std::string, std::size_t, std::less<>> switch_ids_, segment_ids_, load_ids_, source_ids_;
  std::vector<std::array<std::size_t, 2>> ends_;
  std::vector<std::vector<std::size_t>> incident_;
  NormalTree tree_;
};

/// Position of every switch.
class SwitchStates {
 public:
  SwitchStates() = default;
  static SwitchStates normal(const Topology& topology);
  static SwitchStates uniform(const Topology& topology, Position position);

  Position at(std::string_view id) const;
  void set(std::string_view id, Position position);
  bool contains(std::string_view id) const { return positions_.contains(id); }
  bool closed(std::string_view id) const { return at(id) == Position::Closed; }
  const std::map<std::string, Position, std::less<>>& positions() const { return positions_; }

  friend bool operator==(const SwitchStates&, const SwitchStates&) = default;

 private:
  std::map<std::string, Position, std::less<>> positions_;
};

struct ActionRecord {
  std::string switch_id;
  Position from;
  Position to;
  bool noop;
  bool radial;
};

struct ActionResult {
  SwitchStates states;
  ActionRecord record;
};

/// Set one switch. Re-applying the current position succeeds as a no-op.
ActionResult apply_action(const Topology& topology, const SwitchStates& states,
                          std::string_view switch_id, Position position);

/// Configured routes for a load, in priority order (unfiltered).
std::vector<RestorationRoute> restoration_routes(const Topology& topology, std::string_view load_id);

}  // namespace gridteam::grid
