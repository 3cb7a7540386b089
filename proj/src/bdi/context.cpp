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

#include "gridteam/bdi/context.hpp"

#include <stdexcept>

namespace gridteam::bdi {

bool DataContext::contains(std::string_view key) const {
  return bindings_.find(key) != bindings_.end();
}

const DataContext::Value& DataContext::at(std::string_view key) const {
  auto it = bindings_.find(key);
  if (it == bindings_.end()) {
    throw std::out_of_range("data context has no key '" + std::string(key) + "'");
  }
  return *it;
}

void DataContext::set(const std::string& key, Value value) { bindings_[key] = std::move(value); }

bool DataContext::erase(const std::string& key) { return bindings_.erase(key) > 0; }

}  // namespace gridteam::bdi
