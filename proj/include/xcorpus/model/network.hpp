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

#include <string>

#include "xcorpus/autodiff/ops.hpp"
#include "xcorpus/autodiff/params.hpp"
#include "xcorpus/core/rng.hpp"
#include "xcorpus/core/types.hpp"

namespace xcorpus::model {

/// Layer widths. Defaults are the production architecture; tests shrink them
/// to keep finite-difference checks fast.
struct Architecture {
  int input = kFeatureWidth;  // 310
  int hidden1 = 128;
  int hidden2 = 64;
  int latent = kLatentWidth;  // 64
  int disc_hidden1 = 128;
  int disc_hidden2 = 64;
  int classes = kNumEmotions;
  double dropout = 0.5;

  bool operator==(const Architecture&) const = default;
};

// Parameter name prefixes inside a ParamStore.
inline const std::string kExtractor = "extractor.";
inline const std::string kDiscriminator = "discriminator.";
inline const std::string kClassifierRms = "classifier_rms.";
inline const std::string kClassifierAda = "classifier_ada.";
inline const std::string kPointwiseHead = "head.";
inline const std::string kFreePrototypes = "free_prototypes.";

/// input -> hidden1 -> ReLU -> hidden2 -> ReLU -> latent.
void init_extractor(ad::ParamStore& store, const Architecture& arch, Rng& rng);
/// latent -> disc_hidden1 -> ReLU -> dropout -> disc_hidden2 -> ReLU -> 1 -> sigmoid.
void init_discriminator(ad::ParamStore& store, const Architecture& arch, Rng& rng);
inline constexpr double kThetaDiagonal = 4.0;

/// Bilinear matrix theta, latent x latent: kThetaDiagonal * I plus uniform
/// jitter on +-1/sqrt(latent).
void init_classifier(ad::ParamStore& store, const std::string& prefix, const Architecture& arch,
                     Rng& rng);
/// Linear C-way head used by the pointwise baseline.
void init_pointwise_head(ad::ParamStore& store, const Architecture& arch, Rng& rng);

ad::Tensor extract_features(ad::Tape& tape, const ad::ParamStore& store, const ad::Tensor& x,
                            const Architecture& arch);

/// Domain probability per row, in (0, 1). Source is labelled 1.
ad::Tensor discriminate(ad::Tape& tape, const ad::ParamStore& store, const ad::Tensor& features,
                        const Architecture& arch, ad::Mode mode, Rng& rng);

ad::Tensor pointwise_logits(ad::Tape& tape, const ad::ParamStore& store, const ad::Tensor& features);

/// Tape-free feature extraction.
Matrix extract_features(const ad::ParamStore& store, const Matrix& x, const Architecture& arch);

}  // namespace xcorpus::model
