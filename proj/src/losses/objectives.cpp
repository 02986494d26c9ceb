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

#include "xcorpus/losses/objectives.hpp"

#include <cmath>
#include <limits>

#include "xcorpus/core/errors.hpp"

namespace xcorpus::losses {

ad::Tensor loss_disc(const ad::Tensor& p_source, const ad::Tensor& p_target) {
  const auto ps = ad::clamp_probability(p_source);
  const auto pt = ad::clamp_probability(p_target);
  const auto src = ad::sum(ad::log(ps));
  const auto tgt = ad::sum(ad::log(ad::add_scalar(ad::neg(pt), 1.0)));
  return ad::neg(ad::add(src, tgt));
}

ad::Tensor loss_pair(const ad::Tensor& phi, const model::PairTargets& targets) {
  const auto n = phi.rows();
  if (phi.cols() != n || targets.mu.rows() != n || targets.mu.cols() != n || targets.mask.rows() != n ||
      targets.mask.cols() != n)
    throw DimensionError("loss_pair: similarity, targets and mask must share an n x n shape");
  ad::Tape& tape = phi.tape();
  const auto p = ad::clamp_probability(phi);
  const Matrix pos = targets.mask.cwiseProduct(targets.mu);
  const Matrix negw = targets.mask.cwiseProduct((1.0 - targets.mu.array()).matrix());
  const auto a = ad::sum(ad::mul(tape.constant(pos), ad::log(p)));
  const auto b = ad::sum(ad::mul(tape.constant(negw), ad::log(ad::add_scalar(ad::neg(p), 1.0))));
  return ad::scale(ad::add(a, b), -1.0 / static_cast<double>(n * n));
}

ad::Tensor classifier_discrepancy(const ad::Tensor& p_ada, const ad::Tensor& p_rms) {
  return ad::mean(ad::abs(ad::sub(p_ada, p_rms)));
}

ad::Tensor cross_entropy(const ad::Tensor& probs, std::span<const int> labels) {
  if (static_cast<Eigen::Index>(labels.size()) != probs.rows())
    throw DimensionError("cross_entropy: label count differs from rows");
  Matrix onehot = Matrix::Zero(probs.rows(), probs.cols());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= probs.cols()) throw DataError("label outside class range");
    onehot(static_cast<Eigen::Index>(i), labels[i]) = 1.0;
  }
  const auto ll = ad::sum(ad::mul(probs.tape().constant(onehot), ad::log(ad::clamp_probability(probs))));
  return ad::scale(ll, -1.0 / static_cast<double>(labels.size()));
}

void LossWeights::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma))
    throw ConfigError("loss weights must be finite");
  if (gamma < 0.0) throw ConfigError("gamma must be >= 0");
}

namespace {

ad::Tape& tape_of(std::initializer_list<const ad::Tensor*> parts) {
  for (const auto* p : parts)
    if (p->defined()) return p->tape();
  throw ContractError("composite objective with no parts");
}

// acc + w * t, skipping absent parts.
void accumulate(ad::Tensor& acc, const ad::Tensor& t, double w) {
  if (!t.defined()) return;
  const ad::Tensor term = w == 1.0 ? t : ad::scale(t, w);
  acc = acc.defined() ? ad::add(acc, term) : term;
}

ad::Tensor domain_composite(const DomainParts& parts, const LossWeights& w, Adversary adv) {
  w.validate();
  ad::Tape& tape = tape_of({&parts.pair_source, &parts.pair_target, &parts.disc, &parts.align});
  ad::Tensor total;
  accumulate(total, parts.pair_source, 1.0);
  accumulate(total, parts.pair_target, w.alpha);
  accumulate(total, parts.disc, adv == Adversary::kPlain ? -w.beta : 1.0);
  accumulate(total, parts.align, w.gamma);
  return total.defined() ? total : tape.scalar_constant(0.0);
}

}  // namespace

ad::Tensor composite_lmmdpl(const DomainParts& parts, const LossWeights& w, Adversary adv) {
  return domain_composite(parts, w, adv);
}

ad::Tensor composite_cddpl(const DomainParts& parts, const LossWeights& w, Adversary adv) {
  return domain_composite(parts, w, adv);
}

ad::Tensor mcd_losses(int stage, const McdParts& parts, const LossWeights& w, Adversary adv) {
  w.validate();
  ad::Tape& tape = tape_of({&parts.pair_source, &parts.pair_target_ada, &parts.pair_target_rms, &parts.disc,
                            &parts.discrepancy});
  ad::Tensor total;
  switch (stage) {
    case 1:
      accumulate(total, parts.pair_source, 1.0);
      accumulate(total, parts.pair_target_ada, w.alpha);
      accumulate(total, parts.pair_target_rms, w.beta);
      accumulate(total, parts.disc, adv == Adversary::kPlain ? w.gamma : 1.0);
      break;
    case 2:
      accumulate(total, parts.pair_target_ada, 1.0);
      accumulate(total, parts.pair_target_rms, 1.0);
      accumulate(total, parts.discrepancy, -1.0);
      if (total.defined()) total = ad::clamp(total, 0.0, std::numeric_limits<double>::infinity());
      break;
    case 3:
      accumulate(total, parts.disc, 1.0);
      accumulate(total, parts.pair_source, 1.0);
      break;
    default:
      throw ContractError("mcd_losses: unknown stage " + std::to_string(stage));
  }
  return total.defined() ? total : tape.scalar_constant(0.0);
}

}  // namespace xcorpus::losses
