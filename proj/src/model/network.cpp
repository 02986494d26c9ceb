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

#include "xcorpus/model/network.hpp"

#include <cmath>

#include "xcorpus/core/errors.hpp"

namespace xcorpus::model {
namespace {

Matrix uniform(Eigen::Index rows, Eigen::Index cols, double bound, Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = (2.0 * uniform01(rng) - 1.0) * bound;
  return m;
}

// Fan-in scaled uniform init for a dense layer.
void add_dense(ad::ParamStore& store, const std::string& w, const std::string& b, int in, int out,
               Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(in));
  store.add(w, uniform(in, out, bound, rng));
  store.add(b, uniform(1, out, bound, rng));
}

ad::Tensor dense(ad::Tape& tape, const ad::ParamStore& store, const ad::Tensor& x, const std::string& w,
                 const std::string& b) {
  return ad::add_row(ad::matmul(x, tape.param(store, w)), tape.param(store, b));
}

}  // namespace

void init_extractor(ad::ParamStore& store, const Architecture& arch, Rng& rng) {
  add_dense(store, kExtractor + "W1", kExtractor + "b1", arch.input, arch.hidden1, rng);
  add_dense(store, kExtractor + "W2", kExtractor + "b2", arch.hidden1, arch.hidden2, rng);
  add_dense(store, kExtractor + "W3", kExtractor + "b3", arch.hidden2, arch.latent, rng);
}

void init_discriminator(ad::ParamStore& store, const Architecture& arch, Rng& rng) {
  add_dense(store, kDiscriminator + "V1", kDiscriminator + "c1", arch.latent, arch.disc_hidden1, rng);
  add_dense(store, kDiscriminator + "V2", kDiscriminator + "c2", arch.disc_hidden1, arch.disc_hidden2, rng);
  add_dense(store, kDiscriminator + "V3", kDiscriminator + "c3", arch.disc_hidden2, 1, rng);
}

void init_classifier(ad::ParamStore& store, const std::string& prefix, const Architecture& arch,
                     Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(arch.latent));
  Matrix theta(arch.latent, arch.latent);
  for (Eigen::Index j = 0; j < theta.cols(); ++j)
    for (Eigen::Index i = 0; i < theta.rows(); ++i)
      theta(i, j) = (i == j ? kThetaDiagonal : 0.0) + (2.0 * uniform01(rng) - 1.0) * bound;
  store.add(prefix + "theta", theta);
}

void init_pointwise_head(ad::ParamStore& store, const Architecture& arch, Rng& rng) {
  add_dense(store, kPointwiseHead + "W", kPointwiseHead + "b", arch.latent, arch.classes, rng);
}

ad::Tensor extract_features(ad::Tape& tape, const ad::ParamStore& store, const ad::Tensor& x,
                            const Architecture& arch) {
  if (x.cols() != arch.input)
    throw DimensionError("extract_features: expected " + std::to_string(arch.input) + " columns, got " +
                         std::to_string(x.cols()));
  auto h = ad::relu(dense(tape, store, x, kExtractor + "W1", kExtractor + "b1"));
  h = ad::relu(dense(tape, store, h, kExtractor + "W2", kExtractor + "b2"));
  return dense(tape, store, h, kExtractor + "W3", kExtractor + "b3");
}

ad::Tensor discriminate(ad::Tape& tape, const ad::ParamStore& store, const ad::Tensor& features,
                        const Architecture& arch, ad::Mode mode, Rng& rng) {
  if (features.cols() != arch.latent)
    throw DimensionError("discriminate: expected " + std::to_string(arch.latent) + " columns");
  auto h = ad::relu(dense(tape, store, features, kDiscriminator + "V1", kDiscriminator + "c1"));
  h = ad::dropout(h, arch.dropout, mode, rng);
  h = ad::relu(dense(tape, store, h, kDiscriminator + "V2", kDiscriminator + "c2"));
  return ad::sigmoid(dense(tape, store, h, kDiscriminator + "V3", kDiscriminator + "c3"));
}

ad::Tensor pointwise_logits(ad::Tape& tape, const ad::ParamStore& store, const ad::Tensor& features) {
  return dense(tape, store, features, kPointwiseHead + "W", kPointwiseHead + "b");
}

Matrix extract_features(const ad::ParamStore& store, const Matrix& x, const Architecture& arch) {
  if (x.cols() != arch.input)
    throw DimensionError("extract_features: expected " + std::to_string(arch.input) + " columns, got " +
                         std::to_string(x.cols()));
  auto layer = [&](const Matrix& in, const std::string& w, const std::string& b) -> Matrix {
    return (in * store.value(w)).rowwise() + store.value(b).row(0);
  };
  Matrix h = layer(x, kExtractor + "W1", kExtractor + "b1").cwiseMax(0.0);
  h = layer(h, kExtractor + "W2", kExtractor + "b2").cwiseMax(0.0);
  return layer(h, kExtractor + "W3", kExtractor + "b3");
}

}  // namespace xcorpus::model
