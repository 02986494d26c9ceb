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

#include "xcorpus/data/lds.hpp"

#include <vector>

#include "xcorpus/core/errors.hpp"

namespace xcorpus::data {

Matrix lds_smooth(const Matrix& series, double q, double r) {
  if (!(q > 0.0) || !(r > 0.0)) throw ConfigError("lds_smooth: q and r must be > 0");
  const auto steps = series.rows();
  if (steps < 1) throw ContractError("lds_smooth: empty series");
  Matrix out(steps, series.cols());
  std::vector<double> xf(steps), pf(steps), xp(steps), pp(steps);
  for (Eigen::Index d = 0; d < series.cols(); ++d) {
    // Initial state: first observation with observation-level uncertainty.
    xf[0] = series(0, d);
    pf[0] = r;
    xp[0] = xf[0];
    pp[0] = pf[0];
    for (Eigen::Index t = 1; t < steps; ++t) {
      xp[t] = xf[t - 1];
      pp[t] = pf[t - 1] + q;
      const double gain = pp[t] / (pp[t] + r);
      xf[t] = xp[t] + gain * (series(t, d) - xp[t]);
      pf[t] = (1.0 - gain) * pp[t];
    }
    double xs = xf[steps - 1];
    out(steps - 1, d) = xs;
    for (Eigen::Index t = steps - 1; t-- > 0;) {
      const double c = pf[t] / pp[t + 1];
      xs = xf[t] + c * (xs - xp[t + 1]);
      out(t, d) = xs;
    }
  }
  return out;
}

}  // namespace xcorpus::data
