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

#include "xcorpus/model/pairwise.hpp"

#include "xcorpus/core/errors.hpp"

namespace xcorpus::model {

ad::Tensor interaction(const ad::Tensor& features, const ad::Tensor& theta, const Matrix& psi) {
  if (psi.cols() != theta.cols()) throw DimensionError("interaction: prototype width mismatch");
  auto psi_t = features.tape().constant(psi.transpose());
  return ad::matmul(ad::matmul(features, theta), psi_t);
}

ad::Tensor interaction(const ad::Tensor& features, const ad::Tensor& theta, const ad::Tensor& psi) {
  return ad::matmul(ad::matmul(features, theta), ad::transpose(psi));
}

Matrix interaction(const Matrix& features, const Matrix& theta, const Matrix& psi) {
  if (features.cols() != theta.rows() || theta.cols() != psi.cols())
    throw DimensionError("interaction: dimension mismatch");
  return features * theta * psi.transpose();
}

ad::Tensor class_probs(const ad::Tensor& gamma) { return ad::softmax_rows(gamma); }

Matrix class_probs(const Matrix& gamma) {
  ad::Tape tape;
  return ad::softmax_rows(tape.constant(gamma)).value();
}

ad::Tensor similarity(const ad::Tensor& probs) { return ad::matmul(probs, ad::transpose(probs)); }

Matrix similarity(const Matrix& probs) { return probs * probs.transpose(); }

PairTargets pseudo_label(const Matrix& phi, double upper, double lower) {
  if (!(lower >= 0.0 && lower < upper && upper <= 1.0))
    throw ConfigError("pseudo-label thresholds need 0 <= lower < upper <= 1");
  if (phi.rows() != phi.cols()) throw DimensionError("pseudo_label: similarity must be square");
  const auto n = phi.rows();
  PairTargets t{Matrix::Zero(n, n), Matrix::Zero(n, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == j || phi(i, j) > upper) {
        t.mu(i, j) = 1.0;
        t.mask(i, j) = 1.0;
      } else if (phi(i, j) < lower) {
        t.mask(i, j) = 1.0;
      }
    }
  }
  return t;
}

PairTargets label_pairs(std::span<const int> labels) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  PairTargets t{Matrix::Zero(n, n), Matrix::Ones(n, n)};
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) t.mu(i, j) = labels[i] == labels[j] ? 1.0 : 0.0;
  return t;
}

std::vector<int> argmax_rows(const Matrix& m) {
  std::vector<int> out(static_cast<std::size_t>(m.rows()), 0);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    int best = 0;
    for (Eigen::Index c = 1; c < m.cols(); ++c)
      if (m(i, c) > m(i, best)) best = static_cast<int>(c);
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

}  // namespace xcorpus::model
