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

#include "xcorpus/eval/probe.hpp"

#include <Eigen/Cholesky>

#include "xcorpus/core/errors.hpp"

namespace xcorpus::eval {

double linear_probe_accuracy(const data::CorpusDataset& source, const data::CorpusDataset& target, int classes,
                             double ridge) {
  if (source.size() == 0 || target.size() == 0) throw DataError("linear probe needs non-empty data");
  if (!(ridge > 0.0)) throw ConfigError("ridge must be > 0");
  const auto d = source.features.cols();
  const auto n = static_cast<Eigen::Index>(source.size());
  Matrix x(n, d + 1);
  x << source.features, Matrix::Ones(n, 1);
  Matrix y = Matrix::Zero(n, classes);
  for (Eigen::Index i = 0; i < n; ++i) y(i, source.labels[static_cast<std::size_t>(i)]) = 1.0;
  const Matrix gram = x.transpose() * x + ridge * Matrix::Identity(d + 1, d + 1);
  const Matrix w = gram.ldlt().solve(x.transpose() * y);
  const auto m = static_cast<Eigen::Index>(target.size());
  Matrix xt(m, d + 1);
  xt << target.features, Matrix::Ones(m, 1);
  const Matrix scores = xt * w;
  std::size_t hit = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < classes; ++c)
      if (scores(i, c) > scores(i, best)) best = c;
    hit += static_cast<int>(best) == target.labels[static_cast<std::size_t>(i)];
  }
  return static_cast<double>(hit) / static_cast<double>(m);
}

}  // namespace xcorpus::eval
