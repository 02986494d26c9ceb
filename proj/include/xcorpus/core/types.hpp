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

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace xcorpus {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

/// Emotion labels after harmonization.
enum class Emotion : int { kNegative = 0, kNeutral = 1, kPositive = 2 };

inline constexpr int kNumEmotions = 3;
inline constexpr int kChannels = 62;
inline constexpr int kBands = 5;
inline constexpr int kFeatureWidth = kChannels * kBands;  // 310
inline constexpr int kLatentWidth = 64;

using Labels = std::vector<int>;

}  // namespace xcorpus
