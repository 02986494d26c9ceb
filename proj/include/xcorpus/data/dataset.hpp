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

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "xcorpus/core/types.hpp"

namespace xcorpus::data {

/// Feature rows with per-row emotion label, subject and session ids.
struct CorpusDataset {
  Matrix features;  // n x 310
  Labels labels;
  std::vector<int> subjects;
  std::vector<int> sessions;  // 1-based
  std::string corpus_tag;

  std::size_t size() const { return labels.size(); }

  /// Shape and length checks; throws WidthError / DataError.
  void validate() const;
  /// Throws DataError when a label falls outside [0, classes).
  void validate_labels(int classes = kNumEmotions) const;

  CorpusDataset subset(std::span<const std::size_t> rows) const;
  CorpusDataset filter(const std::function<bool(std::size_t)>& keep) const;
  CorpusDataset with_sessions(std::span<const int> sessions) const;

  std::vector<int> distinct_subjects() const;
  std::vector<long long> class_counts(int classes = kNumEmotions) const;

  bool operator==(const CorpusDataset& other) const;
};

/// Read-only view of a dataset without its labels. This is the only form in
/// which trainers see the target domain.
class UnlabeledView {
 public:
  explicit UnlabeledView(const CorpusDataset& ds)
      : features_(ds.features), subjects_(ds.subjects), sessions_(ds.sessions), corpus_tag_(ds.corpus_tag) {}

  const Matrix& features() const { return features_; }
  const std::vector<int>& subjects() const { return subjects_; }
  const std::vector<int>& sessions() const { return sessions_; }
  const std::string& corpus_tag() const { return corpus_tag_; }
  std::size_t size() const { return static_cast<std::size_t>(features_.rows()); }

 private:
  Matrix features_;
  std::vector<int> subjects_;
  std::vector<int> sessions_;
  std::string corpus_tag_;
};

}  // namespace xcorpus::data
