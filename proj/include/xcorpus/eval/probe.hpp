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

#include "xcorpus/data/dataset.hpp"

namespace xcorpus::eval {

// Ridge-regression one-vs-rest linear probe fitted on the source, scored on the target.
double linear_probe_accuracy(const data::CorpusDataset& source, const data::CorpusDataset& target,
                             int classes = kNumEmotions, double ridge = 1.0);

}  // namespace xcorpus::eval
