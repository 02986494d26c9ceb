/* Copyright 2026 The xcorpus Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <map>
#include <string>
#include <vector>

#include "xcorpus/core/types.hpp"

namespace xcorpus::ad {

/// A trainable matrix plus its optimizer accumulators.
struct Parameter {
  Matrix value;
  Matrix first_moment;   // Adam m
  Matrix second_moment;  // Adam v / RMSprop running square
  long steps = 0;        // optimizer updates applied so far
  bool frozen = false;
};

/// Named parameters. Iteration order is the lexicographic name order, which
/// makes checkpoints and gradient maps deterministic.
class ParamStore {
 public:
  Parameter& add(const std::string& name, Matrix init);
  bool contains(const std::string& name) const { return params_.count(name) != 0; }

  Parameter& at(const std::string& name);
  const Parameter& at(const std::string& name) const;
  const Matrix& value(const std::string& name) const { return at(name).value; }

  /// Freezes every parameter whose name starts with `prefix`.
  void freeze(const std::string& prefix);
  void unfreeze(const std::string& prefix);
  void unfreeze_all();

  std::vector<std::string> names() const;
  std::vector<std::string> names_with_prefix(const std::string& prefix) const;
  std::size_t size() const { return params_.size(); }

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }

 private:
  std::map<std::string, Parameter> params_;
};

using Gradients = std::map<std::string, Matrix>;

}  // namespace xcorpus::ad
