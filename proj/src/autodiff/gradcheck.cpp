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

#include "xcorpus/autodiff/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "xcorpus/core/errors.hpp"

namespace xcorpus::ad {
namespace {

double evaluate(const LossBuilder& f, const ParamStore& params) {
  Tape tape;
  return f(tape, params).scalar();
}

}  // namespace

GradCheckResult finite_diff_check(const LossBuilder& f, ParamStore& params, double eps, double floor) {
  if (!(eps >= 1e-7 && eps <= 1e-4)) throw ConfigError("finite difference eps must lie in [1e-7, 1e-4]");
  if (!(floor > 0.0)) throw ConfigError("relative error floor must be positive");
  Gradients analytic;
  {
    Tape tape;
    analytic = tape.backward(f(tape, params));
  }
  GradCheckResult result;
  for (auto& [name, p] : params) {
    if (p.frozen) continue;
    const auto it = analytic.find(name);
    for (Eigen::Index k = 0; k < p.value.size(); ++k) {
      const double a = it == analytic.end() ? 0.0 : it->second(k);
      const double saved = p.value(k);
      p.value(k) = saved + eps;
      const double up = evaluate(f, params);
      p.value(k) = saved - eps;
      const double down = evaluate(f, params);
      p.value(k) = saved;
      const double numeric = (up - down) / (2.0 * eps);
      const double rel = std::abs(a - numeric) / std::max(floor, std::abs(a) + std::abs(numeric));
      result.max_abs_error = std::max(result.max_abs_error, std::abs(a - numeric));
      ++result.coordinates;
      if (rel > result.max_rel_error) {
        result.max_rel_error = rel;
        result.worst_param = name;
        result.worst_index = k;
      }
    }
  }
  return result;
}

}  // namespace xcorpus::ad
