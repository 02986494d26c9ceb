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

#include <cstdint>

#include "xcorpus/data/dataset.hpp"

namespace xcorpus::data {

/// Picks round(fraction * n) rows without replacement and redraws their
/// labels uniformly from all classes (the redraw may repeat the original).
CorpusDataset inject_label_noise(const CorpusDataset& ds, double fraction, std::uint64_t seed,
                                 int classes = kNumEmotions);

}  // namespace xcorpus::data
