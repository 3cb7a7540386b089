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

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace gridteam::bdi {

/// Key/value data shared by every node of one process-model execution.
///
/// Values are JSON trees, so scalars, lists and nested maps are all
/// representable. Keys are unique; setting an existing key replaces it.
class DataContext {
 public:
  using Value = nlohmann::json;

  DataContext() : bindings_(Value::object()) {}

  bool contains(std::string_view key) const;
  const Value& at(std::string_view key) const;
  Value& operator[](const std::string& key) { return bindings_[key]; }
  void set(const std::string& key, Value value);
  bool erase(const std::string& key);
  void clear() { bindings_ = Value::object(); }
  bool empty() const { return bindings_.empty(); }

  template <typename T>
  T get_or(std::string_view key, T fallback) const {
    auto it = bindings_.find(key);
    if (it == bindings_.end() || it->is_null()) return fallback;
    return it->template get<T>();
  }

  const Value& bindings() const { return bindings_; }

  friend bool operator==(const DataContext& a, const DataContext& b) {
    return a.bindings_ == b.bindings_;
  }

 private:
  Value bindings_;
};

}  // namespace gridteam::bdi
