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

#include "xcorpus/data/dataset.hpp"

#include <algorithm>
#include <set>

#include "xcorpus/core/errors.hpp"

namespace xcorpus::data {

void CorpusDataset::validate() const {
  if (features.cols() != kFeatureWidth)
    throw WidthError("dataset '" + corpus_tag + "': feature width " + std::to_string(features.cols()) +
                     ", expected " + std::to_string(kFeatureWidth));
  const auto n = static_cast<std::size_t>(features.rows());
  if (labels.size() != n || subjects.size() != n || sessions.size() != n)
    throw DataError("dataset '" + corpus_tag + "': column lengths disagree");
  if (!features.allFinite()) throw DataError("dataset '" + corpus_tag + "': non-finite feature value");
}

void CorpusDataset::validate_labels(int classes) const {
  for (int l : labels)
    if (l < 0 || l >= classes)
      throw DataError("dataset '" + corpus_tag + "': label " + std::to_string(l) + " outside [0, " +
                      std::to_string(classes) + ")");
}

CorpusDataset CorpusDataset::subset(std::span<const std::size_t> rows) const {
  CorpusDataset out;
  out.corpus_tag = corpus_tag;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  out.labels.reserve(rows.size());
  out.subjects.reserve(rows.size());
  out.sessions.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::size_t i = rows[k];
    if (i >= size()) throw ContractError("subset: row index out of range");
    out.features.row(static_cast<Eigen::Index>(k)) = features.row(static_cast<Eigen::Index>(i));
    out.labels.push_back(labels[i]);
    out.subjects.push_back(subjects[i]);
    out.sessions.push_back(sessions[i]);
  }
  return out;
}

CorpusDataset CorpusDataset::filter(const std::function<bool(std::size_t)>& keep) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < size(); ++i)
    if (keep(i)) rows.push_back(i);
  return subset(rows);
}

CorpusDataset CorpusDataset::with_sessions(std::span<const int> wanted) const {
  return filter([&](std::size_t i) { return std::find(wanted.begin(), wanted.end(), sessions[i]) != wanted.end(); });
}

std::vector<int> CorpusDataset::distinct_subjects() const {
  std::set<int> s(subjects.begin(), subjects.end());
  return {s.begin(), s.end()};
}

std::vector<long long> CorpusDataset::class_counts(int classes) const {
  std::vector<long long> counts(classes, 0);
  for (int l : labels)
    if (l >= 0 && l < classes) ++counts[l];
  return counts;
}

bool CorpusDataset::operator==(const CorpusDataset& other) const {
  return features.rows() == other.features.rows() && features.cols() == other.features.cols() &&
         features == other.features && labels == other.labels && subjects == other.subjects &&
         sessions == other.sessions && corpus_tag == other.corpus_tag;
}

}  // namespace xcorpus::data
