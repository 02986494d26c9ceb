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
#include <string>

#include "xcorpus/autodiff/params.hpp"
#include "xcorpus/model/prototypes.hpp"

namespace xcorpus::model {

inline constexpr char kCheckpointMagic[4] = {'X', 'C', 'K', 'P'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Everything a checkpoint carries. `config` and `state` are opaque text
/// owned by the training layer (resolved config and loop state).
struct Checkpoint {
  std::string config;
  ad::ParamStore params;
  PrototypeBank prototypes;
  std::string state;
};

/// Little-endian binary layout:
///   "XCKP" u32 version | str config | u64 count, per parameter:
///   str name, u64 rows, u64 cols, i64 steps, u8 frozen, value, m, v (f64) |
///   u64 rows, u64 cols, f64 momentum, psi (f64), counts (i64) | str state
/// where str is a u64 length followed by bytes.
void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

std::string encode_checkpoint(const Checkpoint& ckpt);
Checkpoint decode_checkpoint(const std::string& bytes);

}  // namespace xcorpus::model
