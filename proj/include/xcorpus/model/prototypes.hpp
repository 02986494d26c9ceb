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

#include <span>
#include <vector>

#include "xcorpus/core/types.hpp"

namespace xcorpus::model {

/// Per-class centroids of source latent features, refreshed with an
/// exponential moving average. Prototypes are constants for the tape.
class PrototypeBank {
 public:
  PrototypeBank() = default;
  PrototypeBank(int classes, int width, double momentum);

  /// For every class present in the batch:
  ///   psi_c <- m * psi_c + (1 - m) * mean(features with label c).
  /// A class seen for the first time is set to its batch mean.
  void update(const Matrix& features, std::span<const int> labels);

  /// Replaces every row that has samples with its exact class mean.
  void rebuild(const Matrix& features, std::span<const int> labels);

  const Matrix& psi() const { return psi_; }
  Matrix& psi() { return psi_; }
  double momentum() const { return momentum_; }
  const std::vector<long long>& counts() const { return counts_; }
  std::vector<long long>& counts() { return counts_; }
  int classes() const { return static_cast<int>(psi_.rows()); }

  bool operator==(const PrototypeBank& other) const;

 private:
  Matrix psi_;
  double momentum_ = 0.9;
  std::vector<long long> counts_;
};

}  // namespace xcorpus::model
