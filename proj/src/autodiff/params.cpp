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

#include "xcorpus/autodiff/params.hpp"

#include "xcorpus/core/errors.hpp"

namespace xcorpus::ad {

Parameter& ParamStore::add(const std::string& name, Matrix init) {
  if (contains(name)) throw ContractError("duplicate parameter: " + name);
  Parameter p;
  p.first_moment = Matrix::Zero(init.rows(), init.cols());
  p.second_moment = Matrix::Zero(init.rows(), init.cols());
  p.value = std::move(init);
  return params_.emplace(name, std::move(p)).first->second;
}

Parameter& ParamStore::at(const std::string& name) {
  auto it = params_.find(name);
  if (it == params_.end()) throw ContractError("unknown parameter: " + name);
  return it->second;
}

const Parameter& ParamStore::at(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw ContractError("unknown parameter: " + name);
  return it->second;
}

void ParamStore::freeze(const std::string& prefix) {
  for (auto& [name, p] : params_)
    if (name.rfind(prefix, 0) == 0) p.frozen = true;
}

void ParamStore::unfreeze(const std::string& prefix) {
  for (auto& [name, p] : params_)
    if (name.rfind(prefix, 0) == 0) p.frozen = false;
}

void ParamStore::unfreeze_all() {
  for (auto& [name, p] : params_) p.frozen = false;
}

std::vector<std::string> ParamStore::names() const {
  std::vector<std::string> out;
  out.reserve(params_.size());
  for (const auto& [name, p] : params_) out.push_back(name);
  return out;
}

std::vector<std::string> ParamStore::names_with_prefix(const std::string& prefix) const {
  std::vector<std::string> out;
  for (const auto& [name, p] : params_)
    if (name.rfind(prefix, 0) == 0) out.push_back(name);
  return out;
}

}  // namespace xcorpus::ad
