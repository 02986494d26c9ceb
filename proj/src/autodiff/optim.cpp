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

#include "xcorpus/autodiff/optim.hpp"

#include <cmath>

#include "xcorpus/core/errors.hpp"

namespace xcorpus::ad {

void OptimizerHyper::validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw ConfigError("beta1 must lie in [0, 1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw ConfigError("beta2 must lie in [0, 1)");
  if (!(rho >= 0.0 && rho < 1.0)) throw ConfigError("rho must lie in [0, 1)");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (!(l2_weight >= 0.0)) throw ConfigError("l2_weight must be >= 0");
}

void adam_update(Parameter& p, const Matrix& grad, const OptimizerHyper& h) {
  if (p.frozen) return;
  if (grad.rows() != p.value.rows() || grad.cols() != p.value.cols())
    throw DimensionError("adam: gradient shape differs from parameter");
  const Matrix g = grad + h.l2_weight * p.value;
  ++p.steps;
  p.first_moment = h.beta1 * p.first_moment + (1.0 - h.beta1) * g;
  p.second_moment = h.beta2 * p.second_moment + (1.0 - h.beta2) * g.cwiseProduct(g);
  const double c1 = 1.0 - std::pow(h.beta1, static_cast<double>(p.steps));
  const double c2 = 1.0 - std::pow(h.beta2, static_cast<double>(p.steps));
  p.value.array() -= h.learning_rate * (p.first_moment.array() / c1) /
                     ((p.second_moment.array() / c2).sqrt() + h.epsilon);
}

void rmsprop_update(Parameter& p, const Matrix& grad, const OptimizerHyper& h) {
  if (p.frozen) return;
  if (grad.rows() != p.value.rows() || grad.cols() != p.value.cols())
    throw DimensionError("rmsprop: gradient shape differs from parameter");
  const Matrix g = grad + h.l2_weight * p.value;
  ++p.steps;
  p.second_moment = h.rho * p.second_moment + (1.0 - h.rho) * g.cwiseProduct(g);
  p.value.array() -= h.learning_rate * g.array() / (p.second_moment.array().sqrt() + h.epsilon);
}

namespace {

template <typename Update>
void step_all(ParamStore& params, const Gradients& grads, const OptimizerHyper& h,
              const std::vector<std::string>& names, Update update) {
  h.validate();
  const std::vector<std::string> scope = names.empty() ? params.names() : names;
  for (const auto& name : scope) {
    Parameter& p = params.at(name);
    if (p.frozen) continue;
    auto it = grads.find(name);
    if (it == grads.end()) throw ContractError("missing gradient for unfrozen parameter " + name);
    update(p, it->second, h);
  }
}

}  // namespace

void adam_step(ParamStore& params, const Gradients& grads, const OptimizerHyper& h,
               const std::vector<std::string>& names) {
  step_all(params, grads, h, names, adam_update);
}

void rmsprop_step(ParamStore& params, const Gradients& grads, const OptimizerHyper& h,
                  const std::vector<std::string>& names) {
  step_all(params, grads, h, names, rmsprop_update);
}

Optimizer::Optimizer(OptimizerKind kind, OptimizerHyper hyper, std::vector<std::string> names)
    : kind_(kind), hyper_(hyper), names_(std::move(names)) {
  hyper_.validate();
}

void Optimizer::step(ParamStore& params, const Gradients& grads) const {
  if (names_.empty()) return;
  if (kind_ == OptimizerKind::kAdam)
    adam_step(params, grads, hyper_, names_);
  else
    rmsprop_step(params, grads, hyper_, names_);
}

}  // namespace xcorpus::ad
