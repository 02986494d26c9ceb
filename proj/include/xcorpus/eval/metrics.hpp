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

#include <span>
#include <vector>

#include "xcorpus/core/types.hpp"

namespace xcorpus::eval {

using CountMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

// Rows are true labels, columns predicted labels.
CountMatrix confusion_matrix(std::span<const int> predicted, std::span<const int> truth, int classes);

double accuracy_from_confusion(const CountMatrix& confusion);

// NaN for classes absent from the truth.
std::vector<double> recall_from_confusion(const CountMatrix& confusion);

// Population standard deviation (divides by the count).
double population_std(std::span<const double> values);
double mean(std::span<const double> values);

}  // namespace xcorpus::eval
