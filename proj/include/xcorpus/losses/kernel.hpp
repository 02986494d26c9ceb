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

#include <vector>

#include "xcorpus/autodiff/ops.hpp"
#include "xcorpus/core/types.hpp"

namespace xcorpus::losses {

enum class KernelFamily { kGaussianRbf, kLinear };
enum class BandwidthMode { kFixed, kMedianHeuristic };

/// Kernel choice. For kFixed the `bandwidths` are sigma values; for
/// kMedianHeuristic they are multipliers applied to the median pairwise
/// squared distance of the joined batch (sigma^2 = multiplier * median).
struct KernelSpec {
  KernelFamily family = KernelFamily::kGaussianRbf;
  BandwidthMode mode = BandwidthMode::kMedianHeuristic;
  std::vector<double> bandwidths = {0.25, 0.5, 1.0, 2.0, 4.0};

  static KernelSpec median_rbf() { return {}; }
  static KernelSpec fixed_rbf(std::vector<double> sigmas) {
    return {KernelFamily::kGaussianRbf, BandwidthMode::kFixed, std::move(sigmas)};
  }
  static KernelSpec linear() { return {KernelFamily::kLinear, BandwidthMode::kFixed, {}}; }

  void validate() const;
};

/// A kernel resolved for one batch. `sigma2` holds the squared bandwidths; when
/// `inv_base` is defined (1 x 1) they are relative and every squared distance is
/// first multiplied by it, so the batch median stays in the graph.
struct ResolvedKernel {
  KernelFamily family = KernelFamily::kGaussianRbf;
  std::vector<double> sigma2;
  ad::Tensor inv_base;
};

/// Median of the off-diagonal squared distances among the rows of [a; b].
double median_sqdist(const Matrix& a, const Matrix& b);

/// Fixes the bandwidths for one batch as constants.
ResolvedKernel resolve_kernel(const KernelSpec& spec, const Matrix& a, const Matrix& b);

/// Same kernel values, but a median bandwidth is differentiated through the
/// median pair distance, which keeps the kernel invariant to a global rescale.
ResolvedKernel resolve_kernel(const KernelSpec& spec, const ad::Tensor& a, const ad::Tensor& b);

/// K(i,j) = <a_i, b_j> (linear) or mean_sigma exp(-||a_i - b_j||^2 / (2 sigma^2)).
ad::Tensor kernel_matrix(const ad::Tensor& a, const ad::Tensor& b, const ResolvedKernel& kernel);
Matrix kernel_matrix(const Matrix& a, const Matrix& b, const KernelSpec& spec);

}  // namespace xcorpus::losses
