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

#include <json.hpp>

#include "xcorpus/training/config.hpp"

namespace xcorpus::training {

using Json = nlohmann::ordered_json;

Json architecture_to_json(const model::Architecture& arch);
// Missing keys keep their defaults; unknown keys raise ConfigError.
model::Architecture architecture_from_json(const Json& j, model::Architecture base = {});

Json train_to_json(const TrainConfig& cfg);
TrainConfig train_from_json(const Json& j, TrainConfig base = {});

// Full training snapshot: {"model": ..., "train": ...}.
std::string config_fingerprint(const TrainConfig& cfg);

}  // namespace xcorpus::training
