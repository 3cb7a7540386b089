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

#include "gridteam/ied/device_model.hpp"

namespace gridteam::ied {

DeviceModel DeviceModel::protection_ied(std::string server) {
  DeviceModel m(std::move(server));
  m.set("LD0", "TCTR1", "Amp", 0.0);
  m.set("LD0", "PIOC1", "Str", false);
  m.set("LD0", "PIOC1", "Latch", false);
  m.set("LD0", "PTRC1", "Cnt", 0);
  m.set("LD0", "PTRC1", "Tr", false);
  m.set("LD0", "CSWI1", "OpOpn", false);
  m.set("LD0", "XCBR1", "Pos", "Closed");
  return m;
}

void DeviceModel::add_logical_node(const std::string& device, const std::string& node) {
  devices_[device][node];
}

void DeviceModel::set(const std::string& device, const std::string& node, const std::string& object,
                      Value value) {
  devices_[device][node][object] = std::move(value);
}

const DeviceModel::Value& DeviceModel::get(std::string_view device, std::string_view node,
                                           std::string_view object) const {
  auto d = devices_.find(device);
  if (d != devices_.end()) {
    auto n = d->second.find(node);
    if (n != d->second.end()) {
      auto o = n->second.find(object);
      if (o != n->second.end()) return o->second;
    }
  }
  throw std::out_of_range("no data object " + path(device, node, object));
}

bool DeviceModel::has(std::string_view device, std::string_view node, std::string_view object) const {
  auto d = devices_.find(device);
  if (d == devices_.end()) return false;
  auto n = d->second.find(node);
  return n != d->second.end() && n->second.contains(object);
}

std::vector<std::string> DeviceModel::logical_devices() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : devices_) out.push_back(name);
  return out;
}

std::vector<std::string> DeviceModel::logical_nodes(std::string_view device) const {
  std::vector<std::string> out;
  auto d = devices_.find(device);
  if (d == devices_.end()) return out;
  for (const auto& [name, _] : d->second) out.push_back(name);
  return out;
}

std::string DeviceModel::path(std::string_view device, std::string_view node, std::string_view object) const {
  std::string p = server_;
  p.append(".").append(device).append(".").append(node).append(".").append(object);
  return p;
}

}  // namespace gridteam::ied
