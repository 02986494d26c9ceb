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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "xcorpus/data/synth.hpp"
#include "xcorpus/eval/protocol.hpp"
#include "xcorpus/eval/sweeps.hpp"
#include "xcorpus/training/serialize.hpp"

namespace xcorpus::cli {

using training::Json;

struct DataSection {
  std::string preset;  // empty when every synth key is explicit
  data::SynthSpec synth;
  std::filesystem::path source;
  std::filesystem::path target;
  std::string format = "binary";  // binary | csv
};

struct EvalSection {
  eval::ProtocolKind protocol = eval::ProtocolKind::kHoldoutCrossSession;
  int seeds = 5;
  bool monitor = false;
  std::vector<double> noise_grid = eval::kDefaultNoiseGrid;
  std::vector<double> gamma_grid = eval::kDefaultGammaGrid;
  std::vector<std::string> strategies = {"pairwise", "pointwise"};
  std::vector<std::string> ablations = {"no_target_pairwise", "no_prototypes", "no_discriminator", "skip_step2",
                                        "skip_step3"};
};

struct RunConfig {
  std::uint64_t seed = 0;
  DataSection data;
  training::TrainConfig train;
  EvalSection eval;
  std::filesystem::path output_dir = "run";
};

// Applies "section.key=value" overrides to the raw document; values parse as JSON, else as strings.
void apply_override(Json& doc, const std::string& assignment);

// Validates keys, expands presets and fills defaults.
RunConfig resolve_config(const Json& doc);

// Fully resolved document; resolve_config(to_json(c)) reproduces c.
Json to_json(const RunConfig& c);

Json load_json(const std::filesystem::path& path);

Json synth_to_json(const data::SynthSpec& s);
data::SynthSpec synth_from_json(const Json& j, data::SynthSpec base);

}  // namespace xcorpus::cli
