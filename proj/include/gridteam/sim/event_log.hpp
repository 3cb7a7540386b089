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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridteam/sim/message.hpp"

namespace gridteam::sim {

enum class EventKind {
  Sample,
  Trip,
  Command,
  PositionChanged,
  MessageSend,
  MessageDeliver,
  FaultInjected,
  AgentFailed,
  Milestone,
};

std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view text);

struct Event {
  std::int64_t t = 0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::Sample;
  std::string actor;
  Payload detail = Payload::object();
};

enum class LogFormat { Jsonl, Text };

/// Append-only, totally ordered by (t, seq).
class EventLog {
 public:
  void set_header(Payload header) { header_ = std::move(header); }
  const Payload& header() const { return header_; }

  const Event& append(std::int64_t t, EventKind kind, std::string actor, Payload detail);
  const std::vector<Event>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }

  /// {"t":..,"seq":..,"type":..,"actor":..,"detail":{..}} with a fixed key order.
  static std::string jsonl_line(const Event& event);
  static std::string text_line(const Event& event);

  /// Header line first, then one line per event.
  std::string render(LogFormat format) const;

 private:
  Payload header_ = Payload::object();
  std::vector<Event> events_;
};

}  // namespace gridteam::sim
