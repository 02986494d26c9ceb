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

#include "xcorpus/model/prototypes.hpp"

#include "xcorpus/core/errors.hpp"

namespace xcorpus::model {

PrototypeBank::PrototypeBank(int classes, int width, double momentum)
    : psi_(Matrix::Zero(classes, width)), momentum_(momentum), counts_(classes, 0) {
  if (!(momentum >= 0.0 && momentum <= 1.0))
    throw ConfigError("prototype momentum must lie in [0, 1]");
}

namespace {

void class_sums(const Matrix& features, std::span<const int> labels, int classes, Matrix& sums,
                std::vector<long long>& counts) {
  if (static_cast<std::size_t>(features.rows()) != labels.size())
    throw DimensionError("prototype update: feature rows and labels differ");
  sums = Matrix::Zero(classes, features.cols());
  counts.assign(classes, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int c = labels[i];
    if (c < 0 || c >= classes) throw DataError("label " + std::to_string(c) + " outside class range");
    sums.row(c) += features.row(static_cast<Eigen::Index>(i));
    ++counts[c];
  }
}

}  // namespace

void PrototypeBank::update(const Matrix& features, std::span<const int> labels) {
  if (features.cols() != psi_.cols()) throw DimensionError("prototype update: width mismatch");
  Matrix sums;
  std::vector<long long> batch_counts;
  class_sums(features, labels, classes(), sums, batch_counts);
  for (int c = 0; c < classes(); ++c) {
    if (batch_counts[c] == 0) continue;
    const RowVector batch_mean = sums.row(c) / static_cast<double>(batch_counts[c]);
    if (counts_[c] == 0)
      psi_.row(c) = batch_mean;
    else
      psi_.row(c) = momentum_ * psi_.row(c) + (1.0 - momentum_) * batch_mean;
    counts_[c] += batch_counts[c];
  }
}

void PrototypeBank::rebuild(const Matrix& features, std::span<const int> labels) {
  if (features.cols() != psi_.cols()) throw DimensionError("prototype rebuild: width mismatch");
  Matrix sums;
  std::vector<long long> batch_counts;
  class_sums(features, labels, classes(), sums, batch_counts);
  for (int c = 0; c < classes(); ++c) {
    if (batch_counts[c] == 0) continue;
    psi_.row(c) = sums.row(c) / static_cast<double>(batch_counts[c]);
    counts_[c] = batch_counts[c];
  }
}

bool PrototypeBank::operator==(const PrototypeBank& other) const {
  return momentum_ == other.momentum_ && counts_ == other.counts_ && psi_.rows() == other.psi_.rows() &&
         psi_.cols() == other.psi_.cols() && psi_ == other.psi_;
}

}  // namespace xcorpus::model
