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

#include <nlohmann/json.hpp>

namespace gridteam::sim {

enum class MessageKind { Query, Reply, Command, Ack, Request, Grant, Deny, Reset };

inline std::string_view to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::Query: return "Query";
    case MessageKind::Reply: return "Reply";
    case MessageKind::Command: return "Command";
    case MessageKind::Ack: return "Ack";
    case MessageKind::Request: return "Request";
    case MessageKind::Grant: return "Grant";
    case MessageKind::Deny: return "Deny";
    case MessageKind::Reset: return "Reset";
  }
  return "?";
}

/// Payloads are ordered JSON so the rendered log is stable.
using Payload = nlohmann::ordered_json;

struct Message {
  std::string src;
  std::string dst;
  MessageKind kind = MessageKind::Query;
  Payload payload = Payload::object();
  std::int64_t sent = 0;
  std::int64_t deliver = 0;
  std::uint64_t seq = 0;  // send order, fixed by the kernel
};

}  // namespace gridteam::sim
