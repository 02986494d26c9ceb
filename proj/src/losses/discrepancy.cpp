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

#include "xcorpus/losses/discrepancy.hpp"

#include "xcorpus/core/errors.hpp"

namespace xcorpus::losses {
namespace {

// Column sums as a 1 x k tensor.
ad::Tensor col_sums(const ad::Tensor& x) {
  return ad::matmul(x.tape().constant(Matrix::Ones(1, x.rows())), x);
}

// sum_c w_c^T K v_c for weight matrices W (n x C) and V (m x C).
ad::Tensor weighted_form(const ad::Tensor& k, const Matrix& w, const Matrix& v) {
  ad::Tape& tape = k.tape();
  return ad::sum(ad::mul(tape.constant(w), ad::matmul(k, tape.constant(v))));
}

}  // namespace

ad::Tensor mmd(const ad::Tensor& xs, const ad::Tensor& xt, const ResolvedKernel& kernel) {
  const auto kss = kernel_matrix(xs, xs, kernel);
  const auto ktt = kernel_matrix(xt, xt, kernel);
  const auto kst = kernel_matrix(xs, xt, kernel);
  return ad::add(ad::sub(ad::mean(kss), ad::scale(ad::mean(kst), 2.0)), ad::mean(ktt));
}

double mmd(const Matrix& xs, const Matrix& xt, const KernelSpec& spec) {
  const auto k = resolve_kernel(spec, xs, xt);
  ad::Tape tape;
  return mmd(tape.constant(xs), tape.constant(xt), k).scalar();
}

ClassWeights lmmd_weights(std::span<const int> labels, int classes) {
  Matrix onehot = Matrix::Zero(static_cast<Eigen::Index>(labels.size()), classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= classes) throw DataError("label outside class range");
    onehot(static_cast<Eigen::Index>(i), labels[i]) = 1.0;
  }
  return lmmd_weights(onehot);
}

ClassWeights lmmd_weights(const Matrix& probs) {
  ClassWeights cw{Matrix::Zero(probs.rows(), probs.cols()), std::vector<bool>(probs.cols(), false)};
  for (Eigen::Index c = 0; c < probs.cols(); ++c) {
    const double mass = probs.col(c).sum();
    if (mass > 0.0) {
      cw.weights.col(c) = probs.col(c) / mass;
      cw.present[static_cast<std::size_t>(c)] = true;
    }
  }
  return cw;
}

ad::Tensor lmmd(const ad::Tensor& fs, std::span<const int> source_labels, const ad::Tensor& ft,
                const Matrix& target_probs, const ResolvedKernel& kernel) {
  if (target_probs.rows() != ft.rows()) throw DimensionError("lmmd: target probabilities rows differ");
  if (static_cast<Eigen::Index>(source_labels.size()) != fs.rows())
    throw DimensionError("lmmd: source labels and features differ");
  const int classes = static_cast<int>(target_probs.cols());
  if (classes < 1) throw ConfigError("lmmd needs at least one class");
  ClassWeights ws = lmmd_weights(source_labels, classes);
  ClassWeights wt = lmmd_weights(target_probs);
  int valid = 0;
  for (int c = 0; c < classes; ++c) {
    if (ws.present[c] && wt.present[c]) {
      ++valid;
    } else {
      ws.weights.col(c).setZero();
      wt.weights.col(c).setZero();
    }
  }
  ad::Tape& tape = fs.tape();
  if (valid == 0) return tape.scalar_constant(0.0);
  const auto kss = kernel_matrix(fs, fs, kernel);
  const auto ktt = kernel_matrix(ft, ft, kernel);
  const auto kst = kernel_matrix(fs, ft, kernel);
  auto total = ad::add(weighted_form(kss, ws.weights, ws.weights), weighted_form(ktt, wt.weights, wt.weights));
  total = ad::sub(total, ad::scale(weighted_form(kst, ws.weights, wt.weights), 2.0));
  return ad::scale(total, 1.0 / valid);
}

double lmmd(const Matrix& fs, std::span<const int> source_labels, const Matrix& ft,
            const Matrix& target_probs, const KernelSpec& spec) {
  const auto k = resolve_kernel(spec, fs, ft);
  ad::Tape tape;
  return lmmd(tape.constant(fs), source_labels, tape.constant(ft), target_probs, k).scalar();
}

std::vector<int> confident_labels(const Matrix& probs, double threshold) {
  std::vector<int> out(static_cast<std::size_t>(probs.rows()), -1);
  for (Eigen::Index i = 0; i < probs.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < probs.cols(); ++c)
      if (probs(i, c) > probs(i, best)) best = c;
    if (probs(i, best) >= threshold) out[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return out;
}

namespace {

// Uniform weights within each class; -1 labels get no weight.
Matrix uniform_class_weights(std::span<const int> labels, int classes, std::vector<bool>& present) {
  Matrix w = Matrix::Zero(static_cast<Eigen::Index>(labels.size()), classes);
  std::vector<int> counts(classes, 0);
  for (int l : labels) {
    if (l >= classes) throw DataError("label outside class range");
    if (l >= 0) ++counts[l];
  }
  present.assign(classes, false);
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] >= 0) w(static_cast<Eigen::Index>(i), labels[i]) = 1.0 / counts[labels[i]];
  for (int c = 0; c < classes; ++c) present[c] = counts[c] > 0;
  return w;
}

}  // namespace

ad::Tensor cdd(const ad::Tensor& fs, std::span<const int> source_labels, const ad::Tensor& ft,
               std::span<const int> target_labels, int classes, const ResolvedKernel& kernel) {
  if (classes < 2) throw ConfigError("cdd: inter-class term undefined for fewer than 2 classes");
  if (static_cast<Eigen::Index>(source_labels.size()) != fs.rows() ||
      static_cast<Eigen::Index>(target_labels.size()) != ft.rows())
    throw DimensionError("cdd: labels and features differ in length");
  for (int l : source_labels)
    if (l < 0) throw DataError("cdd: source labels must be non-negative");
  std::vector<bool> ps, pt;
  const Matrix s = uniform_class_weights(source_labels, classes, ps);
  const Matrix t = uniform_class_weights(target_labels, classes, pt);

  int n_intra = 0, n_inter = 0;
  for (int c = 0; c < classes; ++c)
    for (int d = 0; d < classes; ++d)
      if (ps[c] && pt[d]) ++(c == d ? n_intra : n_inter);
  ad::Tape& tape = fs.tape();
  if (n_intra == 0 && n_inter == 0) return tape.scalar_constant(0.0);

  Matrix coeff = Matrix::Zero(classes, classes);
  for (int c = 0; c < classes; ++c)
    for (int d = 0; d < classes; ++d) {
      if (!(ps[c] && pt[d])) continue;
      coeff(c, d) = c == d ? 1.0 / n_intra : -1.0 / n_inter;
    }

  const auto kss = kernel_matrix(fs, fs, kernel);
  const auto ktt = kernel_matrix(ft, ft, kernel);
  const auto kst = kernel_matrix(fs, ft, kernel);
  const auto sc = tape.constant(s);
  const auto tc = tape.constant(t);
  // a_c = S_c^T Kss S_c, b_d = T_d^T Ktt T_d, x_cd = S_c^T Kst T_d.
  const auto a = col_sums(ad::mul(sc, ad::matmul(kss, sc)));
  const auto b = col_sums(ad::mul(tc, ad::matmul(ktt, tc)));
  const auto x = ad::matmul(ad::transpose(sc), ad::matmul(kst, tc));
  const auto ones_row = tape.constant(Matrix::Ones(1, classes));
  const auto ones_col = tape.constant(Matrix::Ones(classes, 1));
  const auto d = ad::sub(ad::add(ad::matmul(ad::transpose(a), ones_row), ad::matmul(ones_col, b)),
                         ad::scale(x, 2.0));
  return ad::sum(ad::mul(d, tape.constant(coeff)));
}

double cdd(const Matrix& fs, std::span<const int> source_labels, const Matrix& ft,
           std::span<const int> target_labels, int classes, const KernelSpec& spec) {
  const auto k = resolve_kernel(spec, fs, ft);
  ad::Tape tape;
  return cdd(tape.constant(fs), source_labels, tape.constant(ft), target_labels, classes, k).scalar();
}

}  // namespace xcorpus::losses
