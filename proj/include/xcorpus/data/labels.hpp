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
#include <optional>

#include "xcorpus/data/dataset.hpp"

namespace xcorpus::data {

/// Raw label -> harmonized label, or nullopt to drop the row.
using LabelMap = std::map<int, std::optional<int>>;

/// SEED: -1 negative, 0 neutral, 1 positive.
LabelMap seed_mapping();
/// SEED-IV: 0 neutral, 1 sad, 2 fear (dropped), 3 happy.
LabelMap seed_iv_mapping();
/// SEED-V: 0 disgust (dropped), 1 fear (dropped), 2 sad, 3 neutral, 4 happy.
LabelMap seed_v_mapping();
LabelMap identity_mapping(int classes = kNumEmotions);

/// Drops rows mapped to nullopt and relabels the rest. A raw label missing
/// from the map is a DataError.
CorpusDataset harmonize_labels(const CorpusDataset& ds, const LabelMap& mapping);

}  // namespace xcorpus::data
