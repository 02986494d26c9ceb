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

#include "xcorpus/autodiff/ops.hpp"
#include "xcorpus/core/types.hpp"

namespace xcorpus::model {

/// Gamma = F * theta * Psi^T (n x C). Psi enters as a constant.
ad::Tensor interaction(const ad::Tensor& features, const ad::Tensor& theta, const Matrix& psi);
/// Same with a trainable class matrix in place of the prototypes.
ad::Tensor interaction(const ad::Tensor& features, const ad::Tensor& theta, const ad::Tensor& psi);
Matrix interaction(const Matrix& features, const Matrix& theta, const Matrix& psi);

/// Row-wise softmax of Gamma.
ad::Tensor class_probs(const ad::Tensor& gamma);
Matrix class_probs(const Matrix& gamma);

/// Phi(i,j) = sum_c P(i,c) P(j,c): probability that two samples share a
/// class when their labels are drawn independently from their rows.
ad::Tensor similarity(const ad::Tensor& probs);
Matrix similarity(const Matrix& probs);

/// Pair targets `mu` and inclusion `mask`, both n x n with 0/1 entries.
struct PairTargets {
  Matrix mu;
  Matrix mask;
};

/// Dual-threshold pseudo labels: Phi > upper -> same class, Phi < lower ->
/// different class, anything between is left out. Diagonal pairs are always
/// included as positives.
PairTargets pseudo_label(const Matrix& phi, double upper, double lower);

/// Pair targets from true labels; every pair is included.
PairTargets label_pairs(std::span<const int> labels);

/// Row argmax, lowest index on ties.
std::vector<int> argmax_rows(const Matrix& m);

}  // namespace xcorpus::model
