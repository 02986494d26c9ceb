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

#include "xcorpus/training/config.hpp"

#include <cmath>

#include "xcorpus/core/errors.hpp"

namespace xcorpus::training {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kSourceOnly: return "source_only";
    case Method::kDannpl: return "dannpl";
    case Method::kLmmdpl: return "lmmdpl";
    case Method::kCddpl: return "cddpl";
    case Method::kMcdpl: return "mcdpl";
    case Method::kPointwise: return "pointwise";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::kSourceOnly, Method::kDannpl, Method::kLmmdpl, Method::kCddpl, Method::kMcdpl,
                   Method::kPointwise})
    if (method_name(m) == name) return m;
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected source_only, dannpl, lmmdpl, cddpl, mcdpl or pointwise)");
}

bool Ablation::any() const {
  return no_target_pairwise || no_all_pairwise || no_prototypes || identity_theta || no_discriminator ||
         single_classifier || skip_step2 || skip_step3 || gamma_value.has_value();
}

void set_ablation(Ablation& a, std::string_view name) {
  if (name == "no_target_pairwise") a.no_target_pairwise = true;
  else if (name == "no_all_pairwise") a.no_all_pairwise = true;
  else if (name == "no_prototypes") a.no_prototypes = true;
  else if (name == "identity_theta") a.identity_theta = true;
  else if (name == "no_discriminator") a.no_discriminator = true;
  else if (name == "single_classifier") a.single_classifier = true;
  else if (name == "skip_step2") a.skip_step2 = true;
  else if (name == "skip_step3") a.skip_step3 = true;
  else throw ConfigError("unknown ablation toggle '" + std::string(name) + "'");
}

double default_gamma(Method m) {
  switch (m) {
    case Method::kLmmdpl: return 0.5;
    case Method::kCddpl: return 1.0;
    case Method::kMcdpl: return 1.0;
    default: return 0.0;
  }
}

double TrainConfig::effective_gamma() const {
  if (ablation.gamma_value) return *ablation.gamma_value;
  return gamma ? *gamma : default_gamma(method);
}

losses::LossWeights TrainConfig::weights() const { return {alpha, beta, effective_gamma()}; }

ad::OptimizerHyper TrainConfig::hyper() const {
  ad::OptimizerHyper h;
  h.learning_rate = learning_rate;
  h.l2_weight = l2_weight;
  return h;
}

bool TrainConfig::two_classifiers() const { return method == Method::kMcdpl && !ablation.single_classifier; }

bool TrainConfig::uses_pairwise() const { return method != Method::kPointwise; }

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw ConfigError("learning_rate must be > 0");
  if (epochs < 0) throw ConfigError("epochs must be >= 0");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (inner_steps < 1) throw ConfigError("M (inner_steps) must be >= 1");
  if (!(0.0 <= lower && lower < upper && upper <= 1.0))
    throw ConfigError("pseudo-label thresholds need 0 <= lower < upper <= 1");
  if (!(l2_weight >= 0.0)) throw ConfigError("l2_weight must be >= 0");
  if (!(prototype_momentum >= 0.0 && prototype_momentum <= 1.0))
    throw ConfigError("prototype momentum must lie in [0, 1]");
  if (checkpoint_every < 0) throw ConfigError("checkpoint_every must be >= 0");
  if (arch.classes < 2) throw ConfigError("at least two classes are required");
  if (!(arch.dropout >= 0.0 && arch.dropout < 1.0)) throw ConfigError("dropout must lie in [0, 1)");
  kernel.validate();
  weights().validate();

  const bool mcd = method == Method::kMcdpl;
  const auto reject = [&](bool on, const char* toggle) {
    if (on)
      throw ConfigError(std::string("ablation '") + toggle + "' is not applicable to method '" +
                        std::string(method_name(method)) + "'");
  };
  reject(!mcd && (ablation.single_classifier || ablation.skip_step2 || ablation.skip_step3),
         ablation.single_classifier ? "single_classifier" : (ablation.skip_step2 ? "skip_step2" : "skip_step3"));
  reject(!mcd && stage3_discrepancy, "stage3_discrepancy");
  reject(method == Method::kPointwise && (ablation.no_target_pairwise || ablation.no_all_pairwise ||
                                          ablation.no_prototypes || ablation.identity_theta),
         "pairwise toggle");
  reject(method == Method::kSourceOnly && (ablation.no_target_pairwise || ablation.no_discriminator),
         ablation.no_target_pairwise ? "no_target_pairwise" : "no_discriminator");
  reject(ablation.gamma_value.has_value() && method != Method::kLmmdpl && method != Method::kCddpl,
         "gamma_value");
  if (ablation.gamma_value && !(*ablation.gamma_value >= 0.0)) throw ConfigError("gamma_value must be >= 0");
  if (ablation.no_prototypes && arch.classes > 8)
    throw ConfigError("no_prototypes matches anchors to labels exhaustively and supports at most 8 classes");
}

}  // namespace xcorpus::training
