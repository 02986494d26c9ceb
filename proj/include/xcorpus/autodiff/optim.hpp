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

#include <string>
#include <vector>

#include "xcorpus/autodiff/params.hpp"

namespace xcorpus::ad {

struct OptimizerHyper {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double rho = 0.99;
  double epsilon = 1e-8;
  double l2_weight = 1e-5;

  /// Throws ConfigError when a field is outside its domain.
  void validate() const;
};

enum class OptimizerKind { kAdam, kRmsprop };

// Single-parameter updates. L2 decay is added to the gradient before the
// moment update. Frozen parameters are left untouched.
void adam_update(Parameter& p, const Matrix& grad, const OptimizerHyper& h);
void rmsprop_update(Parameter& p, const Matrix& grad, const OptimizerHyper& h);

/// Applies one Adam step to `names` (all parameters when empty). Every
/// unfrozen parameter in scope must have a gradient.
void adam_step(ParamStore& params, const Gradients& grads, const OptimizerHyper& h,
               const std::vector<std::string>& names = {});
void rmsprop_step(ParamStore& params, const Gradients& grads, const OptimizerHyper& h,
                  const std::vector<std::string>& names = {});

/// An optimizer bound to a fixed set of parameter names.
class Optimizer {
 public:
  Optimizer(OptimizerKind kind, OptimizerHyper hyper, std::vector<std::string> names);

  void step(ParamStore& params, const Gradients& grads) const;
  OptimizerKind kind() const { return kind_; }
  const std::vector<std::string>& names() const { return names_; }

 private:
  OptimizerKind kind_;
  OptimizerHyper hyper_;
  std::vector<std::string> names_;
};

}  // namespace xcorpus::ad
