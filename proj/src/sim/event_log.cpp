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

#include "gridteam/sim/event_log.hpp"

#include <array>

namespace gridteam::sim {

namespace {

constexpr std::array kKinds{EventKind::Sample,      EventKind::Trip,           EventKind::Command,
                            EventKind::PositionChanged, EventKind::MessageSend, EventKind::MessageDeliver,
                            EventKind::FaultInjected, EventKind::AgentFailed,  EventKind::Milestone};

}  // namespace

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Sample: return "Sample";
    case EventKind::Trip: return "Trip";
    case EventKind::Command: return "Command";
    case EventKind::PositionChanged: return "PositionChanged";
    case EventKind::MessageSend: return "MessageSend";
    case EventKind::MessageDeliver: return "MessageDeliver";
    case EventKind::FaultInjected: return "FaultInjected";
    case EventKind::AgentFailed: return "AgentFailed";
    case EventKind::Milestone: return "Milestone";
  }
  return "?";
}

std::optional<EventKind> parse_event_kind(std::string_view text) {
  for (auto k : kKinds) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

const Event& EventLog::append(std::int64_t t, EventKind kind, std::string actor, Payload detail) {
  const std::uint64_t seq = events_.size();
  events_.push_back(Event{t, seq, kind, std::move(actor), std::move(detail)});
  return events_.back();
}

std::string EventLog::jsonl_line(const Event& event) {
  Payload line;
  line["t"] = event.t;
  line["seq"] = event.seq;
  line["type"] = to_string(event.kind);
  line["actor"] = event.actor;
  line["detail"] = event.detail;
  return line.dump();
}

std::string EventLog::text_line(const Event& event) {
  std::string out = "t=" + std::to_string(event.t) + " #" + std::to_string(event.seq) + " " +
                    std::string(to_string(event.kind)) + " " + event.actor;
  if (!event.detail.empty()) out += " " + event.detail.dump();
  return out;
}

std::string EventLog::render(LogFormat format) const {
  std::string out;
  if (format == LogFormat::Jsonl) {
    out += Payload{{"header", header_}}.dump();
  } else {
    out += "# " + header_.dump();
  }
  out += '\n';
  for (const auto& e : events_) {
    out += format == LogFormat::Jsonl ? jsonl_line(e) : text_line(e);
    out += '\n';
  }
  return out;
}

}  // namespace gridteam::sim
