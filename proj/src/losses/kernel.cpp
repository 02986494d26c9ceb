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

#include "xcorpus/losses/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "xcorpus/core/errors.hpp"

namespace xcorpus::losses {

void KernelSpec::validate() const {
  if (family == KernelFamily::kLinear) return;
  if (bandwidths.empty()) throw ConfigError("rbf kernel needs at least one bandwidth");
  for (double b : bandwidths)
    if (!(b > 0.0) || !std::isfinite(b)) throw ConfigError("kernel bandwidths must be finite and > 0");
}

namespace {

struct PairDist {
  double d;
  Eigen::Index i, j;
};

// Pairs whose distances make up the median: one pair for an odd count, two otherwise.
std::vector<PairDist> median_pairs(const Matrix& a, const Matrix& b) {
  Matrix joined(a.rows() + b.rows(), a.cols());
  joined << a, b;
  const Matrix t = joined.transpose();
  const auto n = t.cols();
  std::vector<PairDist> d;
  d.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index j = 1; j < n; ++j)
    for (Eigen::Index i = 0; i < j; ++i) d.push_back({(t.col(i) - t.col(j)).squaredNorm(), i, j});
  if (d.empty()) return {};
  const auto by_dist = [](const PairDist& x, const PairDist& y) { return x.d < y.d; };
  const auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
  std::nth_element(d.begin(), mid, d.end(), by_dist);
  if (d.size() % 2 == 1) return {*mid};
  return {*std::max_element(d.begin(), mid, by_dist), *mid};
}

double mean_dist(const std::vector<PairDist>& pairs) {
  double s = 0.0;
  for (const auto& p : pairs) s += p.d;
  return pairs.empty() ? 0.0 : s / static_cast<double>(pairs.size());
}

// Row r of [a; b] as a 1 x d tensor.
ad::Tensor joined_row(const ad::Tensor& a, const ad::Tensor& b, Eigen::Index r) {
  const ad::Tensor& src = r < a.rows() ? a : b;
  const Eigen::Index k = r < a.rows() ? r : r - a.rows();
  Matrix e = Matrix::Zero(1, src.rows());
  e(0, k) = 1.0;
  return ad::matmul(src.tape().constant(e), src);
}

}  // namespace

double median_sqdist(const Matrix& a, const Matrix& b) {
  const double med = mean_dist(median_pairs(a, b));
  return med > 0.0 ? med : 1.0;
}

ResolvedKernel resolve_kernel(const KernelSpec& spec, const Matrix& a, const Matrix& b) {
  spec.validate();
  if (a.rows() == 0 || b.rows() == 0) throw ContractError("kernel: empty input");
  if (a.cols() != b.cols()) throw DimensionError("kernel: width mismatch");
  ResolvedKernel k;
  k.family = spec.family;
  if (spec.family == KernelFamily::kLinear) return k;
  if (spec.mode == BandwidthMode::kFixed) {
    for (double s : spec.bandwidths) k.sigma2.push_back(s * s);
  } else {
    const double base = median_sqdist(a, b);
    for (double m : spec.bandwidths) k.sigma2.push_back(m * base);
  }
  return k;
}

ad::Tensor kernel_matrix(const ad::Tensor& a, const ad::Tensor& b, const ResolvedKernel& kernel) {
  if (a.rows() == 0 || b.rows() == 0) throw ContractError("kernel: empty input");
  if (kernel.family == KernelFamily::kLinear) return ad::matmul(a, ad::transpose(b));
  if (kernel.sigma2.empty()) throw ConfigError("rbf kernel needs at least one bandwidth");
  ad::Tensor d = ad::pairwise_sqdist(a, b);
  if (kernel.inv_base.defined()) {
    ad::Tape& tape = a.tape();
    const ad::Tensor spread = ad::matmul(ad::matmul(tape.constant(Matrix::Ones(a.rows(), 1)), kernel.inv_base),
                                         tape.constant(Matrix::Ones(1, b.rows())));
    d = ad::mul(d, spread);
  }
  ad::Tensor acc;
  for (double s2 : kernel.sigma2) {
    ad::Tensor k = ad::exp(ad::scale(d, -0.5 / s2));
    acc = acc.defined() ? ad::add(acc, k) : k;
  }
  return ad::scale(acc, 1.0 / static_cast<double>(kernel.sigma2.size()));
}

ResolvedKernel resolve_kernel(const KernelSpec& spec, const ad::Tensor& a, const ad::Tensor& b) {
  if (spec.family == KernelFamily::kLinear || spec.mode == BandwidthMode::kFixed)
    return resolve_kernel(spec, a.value(), b.value());
  spec.validate();
  if (a.rows() == 0 || b.rows() == 0) throw ContractError("kernel: empty input");
  if (a.cols() != b.cols()) throw DimensionError("kernel: width mismatch");
  ResolvedKernel k;
  k.sigma2 = spec.bandwidths;
  const auto pairs = median_pairs(a.value(), b.value());
  ad::Tape& tape = a.tape();
  if (!(mean_dist(pairs) > 0.0)) {
    k.inv_base = tape.scalar_constant(1.0);
    return k;
  }
  ad::Tensor base;
  for (const auto& p : pairs) {
    const ad::Tensor d = ad::sum(ad::square(ad::sub(joined_row(a, b, p.i), joined_row(a, b, p.j))));
    base = base.defined() ? ad::add(base, d) : d;
  }
  base = ad::scale(base, 1.0 / static_cast<double>(pairs.size()));
  k.inv_base = ad::exp(ad::neg(ad::log(base)));
  return k;
}

Matrix kernel_matrix(const Matrix& a, const Matrix& b, const KernelSpec& spec) {
  const ResolvedKernel k = resolve_kernel(spec, a, b);
  ad::Tape tape;
  return kernel_matrix(tape.constant(a), tape.constant(b), k).value();
}

}  // namespace xcorpus::losses
