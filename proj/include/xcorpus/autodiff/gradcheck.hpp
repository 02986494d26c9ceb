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

#include <functional>

#include "xcorpus/autodiff/tensor.hpp"

namespace xcorpus::ad {

/// Builds a scalar loss on a fresh tape from the current parameter values.
using LossBuilder = std::function<Tensor(Tape&, const ParamStore&)>;

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_param;
  Eigen::Index worst_index = -1;
  std::size_t coordinates = 0;
  double max_abs_error = 0.0;
};

/// Compares tape gradients with central differences over every coordinate
/// of every unfrozen parameter. Relative error per coordinate is
/// |a - n| / max(floor, |a| + |n|).
GradCheckResult finite_diff_check(const LossBuilder& f, ParamStore& params, double eps = 1e-5,
                                  double floor = 1e-8);

}  // namespace xcorpus::ad
