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

#include "xcorpus/losses/kernel.hpp"

namespace xcorpus::losses {

/// Biased (V-statistic) squared MMD:
///   mean(K_ss) - 2 mean(K_st) + mean(K_tt).
ad::Tensor mmd(const ad::Tensor& xs, const ad::Tensor& xt, const ResolvedKernel& kernel);
double mmd(const Matrix& xs, const Matrix& xt, const KernelSpec& spec);

/// Per-class sample weights, n x C. Column c holds v_ic / sum_k v_kc where
/// v is either a one-hot label or a probability row. A column whose mass is
/// zero is returned as all zeros and flagged in `present`.
struct ClassWeights {
  Matrix weights;
  std::vector<bool> present;
};
ClassWeights lmmd_weights(std::span<const int> labels, int classes);
ClassWeights lmmd_weights(const Matrix& probs);

/// Class-weighted MMD averaged over the classes that carry mass on both
/// sides. Target weights come from `target_probs` and are constants.
ad::Tensor lmmd(const ad::Tensor& fs, std::span<const int> source_labels, const ad::Tensor& ft,
                const Matrix& target_probs, const ResolvedKernel& kernel);
double lmmd(const Matrix& fs, std::span<const int> source_labels, const Matrix& ft,
            const Matrix& target_probs, const KernelSpec& spec);

/// Hard pseudo labels: argmax of each row when its maximum is at least
/// `threshold`, otherwise -1 (excluded).
std::vector<int> confident_labels(const Matrix& probs, double threshold);

/// Contrastive discrepancy: mean intra-class MMD minus mean inter-class MMD
/// between source class c and target pseudo-class c'. Pairs with an empty
/// side are skipped and the matching normalizer shrinks. Needs C >= 2.
ad::Tensor cdd(const ad::Tensor& fs, std::span<const int> source_labels, const ad::Tensor& ft,
               std::span<const int> target_labels, int classes, const ResolvedKernel& kernel);
double cdd(const Matrix& fs, std::span<const int> source_labels, const Matrix& ft,
           std::span<const int> target_labels, int classes, const KernelSpec& spec);

}  // namespace xcorpus::losses
