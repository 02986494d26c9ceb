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

#include "xcorpus/data/labels.hpp"

#include "xcorpus/core/errors.hpp"

namespace xcorpus::data {

namespace {
constexpr int kNeg = static_cast<int>(Emotion::kNegative);
constexpr int kNeu = static_cast<int>(Emotion::kNeutral);
constexpr int kPos = static_cast<int>(Emotion::kPositive);
}  // namespace

LabelMap seed_mapping() { return {{-1, kNeg}, {0, kNeu}, {1, kPos}}; }

LabelMap seed_iv_mapping() { return {{0, kNeu}, {1, kNeg}, {2, std::nullopt}, {3, kPos}}; }

LabelMap seed_v_mapping() {
  return {{0, std::nullopt}, {1, std::nullopt}, {2, kNeg}, {3, kNeu}, {4, kPos}};
}

LabelMap identity_mapping(int classes) {
  LabelMap m;
  for (int c = 0; c < classes; ++c) m[c] = c;
  return m;
}

CorpusDataset harmonize_labels(const CorpusDataset& ds, const LabelMap& mapping) {
  std::vector<std::size_t> keep;
  std::vector<int> relabeled;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto it = mapping.find(ds.labels[i]);
    if (it == mapping.end())
      throw DataError("harmonize_labels: unmapped label " + std::to_string(ds.labels[i]) + " in '" +
                      ds.corpus_tag + "'");
    if (!it->second) continue;
    keep.push_back(i);
    relabeled.push_back(*it->second);
  }
  CorpusDataset out = ds.subset(keep);
  out.labels = std::move(relabeled);
  return out;
}

}  // namespace xcorpus::data
