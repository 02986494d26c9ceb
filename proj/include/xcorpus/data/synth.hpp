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

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xcorpus/data/dataset.hpp"

namespace xcorpus::data {

/// Parameters of the synthetic cross-corpus generator.
///
/// Each class c has a mean m_c = separation * (u_c - mean_k u_k) built from
/// C orthonormal random directions, so any two class means are
/// separation * sqrt(2) apart. Corpus 0 is the reference. Every other
/// corpus applies x -> R x + t, where R rotates each coordinate pair
/// (2p, 2p+1) by +-rotation_deg and t has length `translation`. With
/// a = translation_alignment, t = translation * (a e + sqrt(1 - a^2) r),
/// where e is the unit axis from the first to the last class mean and r a
/// random unit vector orthogonal to e. Each subject adds a random offset of
/// length `subject_shift`; samples add isotropic noise of scale `noise_sigma`
/// plus `factor_rank` shared random directions with scale `factor_sigma`.
struct SynthSpec {
  int classes = kNumEmotions;
  int subjects = 4;
  int sessions = 3;
  int samples_per_class = 300;  // per corpus, spread over subjects x sessions
  double separation = 3.0;
  double rotation_deg = 0.0;
  double translation = 0.0;
  double translation_alignment = 0.0;
  double subject_shift = 0.0;
  double noise_sigma = 1.0;
  int factor_rank = 0;        // shared low-rank noise subspace, 0 = none
  double factor_sigma = 0.0;  // per-factor scale
  std::uint64_t seed = 0;

  void validate() const;
  bool operator==(const SynthSpec&) const = default;
};

CorpusDataset synth_corpus(const SynthSpec& spec, int corpus_index);

/// (source, target) = corpora 0 and 1.
std::pair<CorpusDataset, CorpusDataset> synth_pair(const SynthSpec& spec);

/// Committed presets: "no-shift", "moderate-shift", "hard-shift".
SynthSpec synth_preset(std::string_view name);
std::vector<std::string> synth_preset_names();

}  // namespace xcorpus::data
