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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xcorpus/autodiff/optim.hpp"
#include "xcorpus/losses/kernel.hpp"
#include "xcorpus/losses/objectives.hpp"
#include "xcorpus/model/network.hpp"

namespace xcorpus::training {

enum class Method { kSourceOnly, kDannpl, kLmmdpl, kCddpl, kMcdpl, kPointwise };

std::string_view method_name(Method m);
Method parse_method(std::string_view name);

enum class DiscReduction { kSum, kMean };

// Ablation toggles. All false reproduces the full method.
struct Ablation {
  bool no_target_pairwise = false;
  bool no_all_pairwise = false;
  bool no_prototypes = false;
  bool identity_theta = false;
  bool no_discriminator = false;
  bool single_classifier = false;
  bool skip_step2 = false;
  bool skip_step3 = false;
  std::optional<double> gamma_value;

  bool any() const;
  bool operator==(const Ablation&) const = default;
};

inline const std::vector<std::string> kAblationNames = {
    "no_target_pairwise", "no_all_pairwise", "no_prototypes", "identity_theta",
    "no_discriminator",   "single_classifier", "skip_step2",  "skip_step3"};

// Sets the named boolean toggle; ConfigError for unknown names.
void set_ablation(Ablation& a, std::string_view name);

struct TrainConfig {
  Method method = Method::kMcdpl;
  double learning_rate = 1e-3;
  int epochs = 300;
  int batch_size = 256;
  double alpha = 1.0;
  double beta = 1.0;
  std::optional<double> gamma;  // per-method default when unset
  int inner_steps = 4;          // M
  double upper = 0.8;
  double lower = 0.2;
  losses::KernelSpec kernel;
  double l2_weight = 1e-5;
  std::uint64_t seed = 0;
  double prototype_momentum = 0.9;
  DiscReduction disc_reduction = DiscReduction::kMean;
  bool stage3_discrepancy = false;
  int checkpoint_every = 0;
  model::Architecture arch;
  Ablation ablation;

  double effective_gamma() const;
  losses::LossWeights weights() const;
  ad::OptimizerHyper hyper() const;
  bool two_classifiers() const;
  bool uses_pairwise() const;

  // Throws ConfigError on invalid values or toggles incompatible with the method.
  void validate() const;
};

double default_gamma(Method m);

}  // namespace xcorpus::training
