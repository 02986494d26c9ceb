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

#include "xcorpus/autodiff/tensor.hpp"
#include "xcorpus/core/rng.hpp"

namespace xcorpus::ad {

enum class Unary { kRelu, kSigmoid, kLog, kAbs, kNeg, kSquare, kExp };
enum class Reduce { kSum, kMean };
enum class Mode { kTrain, kEval };

/// Probability floor applied before every log.
inline constexpr double kProbEpsilon = 1e-12;

Tensor matmul(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& a);

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
/// Elementwise product.
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double s);
Tensor add_scalar(const Tensor& a, double s);
/// Adds a 1xm row to every row of an nxm matrix.
Tensor add_row(const Tensor& x, const Tensor& row);

// relu'(0) = 0 and |.|'(0) = 0.
Tensor elementwise(const Tensor& x, Unary f);
inline Tensor relu(const Tensor& x) { return elementwise(x, Unary::kRelu); }
inline Tensor sigmoid(const Tensor& x) { return elementwise(x, Unary::kSigmoid); }
inline Tensor log(const Tensor& x) { return elementwise(x, Unary::kLog); }
inline Tensor abs(const Tensor& x) { return elementwise(x, Unary::kAbs); }
inline Tensor neg(const Tensor& x) { return elementwise(x, Unary::kNeg); }
inline Tensor square(const Tensor& x) { return elementwise(x, Unary::kSquare); }
inline Tensor exp(const Tensor& x) { return elementwise(x, Unary::kExp); }

/// Clamps into [lo, hi]; the gradient is zero where clamping was active.
Tensor clamp(const Tensor& x, double lo, double hi);
inline Tensor clamp_probability(const Tensor& x) {
  return clamp(x, kProbEpsilon, 1.0 - kProbEpsilon);
}

/// Row-wise softmax with max subtraction.
Tensor softmax_rows(const Tensor& x);

Tensor reduce(const Tensor& x, Reduce how);
inline Tensor sum(const Tensor& x) { return reduce(x, Reduce::kSum); }
inline Tensor mean(const Tensor& x) { return reduce(x, Reduce::kMean); }

/// Inverted dropout. Identity in eval mode or when p == 0.
Tensor dropout(const Tensor& x, double p, Mode mode, Rng& rng);

/// Identity forward; multiplies the incoming gradient by -coeff.
Tensor grad_reverse(const Tensor& x, double coeff);

/// Detached copy of x.
Tensor stop_gradient(const Tensor& x);

/// D(i,j) = ||a_i - b_j||^2, computed by explicit differences.
Tensor pairwise_sqdist(const Tensor& a, const Tensor& b);

}  // namespace xcorpus::ad
