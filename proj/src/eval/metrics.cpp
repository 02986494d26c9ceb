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

#include "xcorpus/eval/metrics.hpp"

#include <cmath>
#include <limits>

#include "xcorpus/core/errors.hpp"

namespace xcorpus::eval {

CountMatrix confusion_matrix(std::span<const int> predicted, std::span<const int> truth, int classes) {
  if (predicted.size() != truth.size()) throw DimensionError("confusion_matrix: length mismatch");
  if (classes < 1) throw ConfigError("confusion_matrix: classes must be >= 1");
  CountMatrix m = CountMatrix::Zero(classes, classes);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int t = truth[i];
    const int p = predicted[i];
    if (t < 0 || t >= classes || p < 0 || p >= classes)
      throw DataError("confusion_matrix: label outside 0.." + std::to_string(classes - 1));
    ++m(t, p);
  }
  return m;
}

double accuracy_from_confusion(const CountMatrix& confusion) {
  const long long total = confusion.sum();
  if (total == 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(confusion.trace()) / static_cast<double>(total);
}

std::vector<double> recall_from_confusion(const CountMatrix& confusion) {
  std::vector<double> out(static_cast<std::size_t>(confusion.rows()));
  for (Eigen::Index c = 0; c < confusion.rows(); ++c) {
    const long long row = confusion.row(c).sum();
    out[static_cast<std::size_t>(c)] = row == 0 ? std::numeric_limits<double>::quiet_NaN()
                                                : static_cast<double>(confusion(c, c)) / static_cast<double>(row);
  }
  return out;
}

double mean(std::span<const double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double population_std(std::span<const double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double m = mean(values);
  double s = 0.0;
  for (double v : values) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(values.size()));
}

}  // namespace xcorpus::eval
