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
#include "xcorpus/model/pairwise.hpp"

namespace xcorpus::losses {

/// -sum log p_source - sum log(1 - p_target), probabilities clamped first.
ad::Tensor loss_disc(const ad::Tensor& p_source, const ad::Tensor& p_target);

/// (1/n^2) sum over masked pairs of the binary cross-entropy between the
/// pair target mu and the clamped similarity Phi.
ad::Tensor loss_pair(const ad::Tensor& phi, const model::PairTargets& targets);

/// mean |P_ada - P_rms| over samples and classes.
ad::Tensor classifier_discrepancy(const ad::Tensor& p_ada, const ad::Tensor& p_rms);

/// Per-sample cross-entropy on true labels, averaged over the batch.
ad::Tensor cross_entropy(const ad::Tensor& probs, std::span<const int> labels);

struct LossWeights {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 0.5;

  void validate() const;
};

/// How the adversarial part of a composite was recorded.
///  kPlain:    `disc` is l_disc on untouched features; the composite carries
///             the objective's own signs and its gradient is the gradient of the
///             written objective.
///  kReversed: `disc` was computed on grad_reverse(features, weight), so it
///             enters with +1; the discriminator descends on l_disc and the
///             extractor receives the weighted, sign-flipped gradient.
enum class Adversary { kPlain, kReversed };

/// Parts of the single-classifier objectives. Absent parts are empty tensors.
struct DomainParts {
  ad::Tensor pair_source;
  ad::Tensor pair_target;
  ad::Tensor disc;
  ad::Tensor align;  // LMMD or CDD
};

/// pair_s + alpha pair_t - beta disc + gamma align.
ad::Tensor composite_lmmdpl(const DomainParts& parts, const LossWeights& w, Adversary adv);
/// Same form with the CDD alignment term.
ad::Tensor composite_cddpl(const DomainParts& parts, const LossWeights& w, Adversary adv);

struct McdParts {
  ad::Tensor pair_source;
  ad::Tensor pair_target_ada;
  ad::Tensor pair_target_rms;
  ad::Tensor disc;
  ad::Tensor discrepancy;
};

/// Stage 1: pair_s + alpha pt_ada + beta pt_rms + gamma disc.
/// Stage 2: max(0, pt_ada + pt_rms - discrepancy).
/// Stage 3: disc + pair_s.
ad::Tensor mcd_losses(int stage, const McdParts& parts, const LossWeights& w, Adversary adv);

/// Weight that goes into grad_reverse for the adversarial term of each
/// objective when recorded with Adversary::kReversed.
inline double reversal_coefficient_domain(const LossWeights& w) { return w.beta; }
inline double reversal_coefficient_mcd(int stage, const LossWeights& w) {
  return stage == 1 ? w.gamma : 1.0;
}

}  // namespace xcorpus::losses
