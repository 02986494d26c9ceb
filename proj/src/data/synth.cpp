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

#include "xcorpus/data/synth.hpp"

#include <cmath>
#include <numbers>

#include "xcorpus/core/errors.hpp"
#include "xcorpus/core/rng.hpp"

namespace xcorpus::data {

void SynthSpec::validate() const {
  if (classes < 2) throw ConfigError("synth: classes must be >= 2");
  if (subjects < 1 || sessions < 1 || samples_per_class < 1)
    throw ConfigError("synth: subjects, sessions and samples_per_class must be >= 1");
  if (!(separation >= 0.0) || !(rotation_deg >= 0.0) || !(translation >= 0.0) || !(subject_shift >= 0.0) ||
      !(noise_sigma >= 0.0) || !(factor_sigma >= 0.0))
    throw ConfigError("synth: scales must be >= 0");
  if (!(translation_alignment >= 0.0 && translation_alignment <= 1.0))
    throw ConfigError("synth: translation_alignment must lie in [0, 1]");
  if (factor_rank < 0 || factor_rank > kFeatureWidth)
    throw ConfigError("synth: factor_rank must lie in [0, 310]");
}

namespace {

Vector random_unit(Rng& rng, int dim) {
  Vector v(dim);
  for (int k = 0; k < dim; ++k) v(k) = standard_normal(rng);
  return v / v.norm();
}

// Orthonormal class directions centred on their mean, scaled by the separation.
Matrix class_means(const SynthSpec& spec) {
  Rng rng = make_rng(spec.seed, "class-means");
  Matrix basis(kFeatureWidth, spec.classes);
  for (int c = 0; c < spec.classes; ++c) {
    Vector v(kFeatureWidth);
    for (int k = 0; k < kFeatureWidth; ++k) v(k) = standard_normal(rng);
    for (int p = 0; p < c; ++p) v -= basis.col(p).dot(v) * basis.col(p);
    basis.col(c) = v / v.norm();
  }
  const Vector centre = basis.rowwise().mean();
  Matrix means(spec.classes, kFeatureWidth);
  for (int c = 0; c < spec.classes; ++c) means.row(c) = spec.separation * (basis.col(c) - centre).transpose();
  return means;
}

// Orthonormal columns spanning the shared correlated-noise subspace.
Matrix factor_basis(const SynthSpec& spec) {
  Rng rng = make_rng(spec.seed, "noise-factors");
  Matrix basis(kFeatureWidth, spec.factor_rank);
  for (int r = 0; r < spec.factor_rank; ++r) {
    Vector v(kFeatureWidth);
    for (int k = 0; k < kFeatureWidth; ++k) v(k) = standard_normal(rng);
    for (int p = 0; p < r; ++p) v -= basis.col(p).dot(v) * basis.col(p);
    basis.col(r) = v / v.norm();
  }
  return basis;
}

struct CorpusShift {
  Vector angles;  // one per coordinate pair
  Vector translation;
};

CorpusShift corpus_shift(const SynthSpec& spec, const Matrix& means, int corpus_index) {
  CorpusShift shift;
  shift.angles = Vector::Zero(kFeatureWidth / 2);
  shift.translation = Vector::Zero(kFeatureWidth);
  if (corpus_index == 0) return shift;
  Rng rng = make_rng(spec.seed, "corpus-shift-" + std::to_string(corpus_index));
  const double theta = spec.rotation_deg * std::numbers::pi / 180.0;
  for (int j = 0; j < kFeatureWidth / 2; ++j) shift.angles(j) = (uniform01(rng) < 0.5 ? -theta : theta);
  // Translation mixes a direction along the last-minus-first class axis with a random one.
  Vector axis = (means.row(spec.classes - 1) - means.row(0)).transpose();
  const double axis_norm = axis.norm();
  Vector random_dir = random_unit(rng, kFeatureWidth);
  if (axis_norm > 0.0) {
    axis /= axis_norm;
    random_dir -= axis.dot(random_dir) * axis;
    random_dir /= random_dir.norm();
  } else {
    axis = random_dir;
  }
  const double a = spec.translation_alignment;
  shift.translation = spec.translation * (a * axis + std::sqrt(1.0 - a * a) * random_dir);
  return shift;
}

void rotate_pairs(Eigen::Ref<RowVector> x, const Vector& angles) {
  for (Eigen::Index j = 0; j < angles.size(); ++j) {
    if (angles(j) == 0.0) continue;
    const double c = std::cos(angles(j));
    const double s = std::sin(angles(j));
    const double u = x(2 * j);
    const double v = x(2 * j + 1);
    x(2 * j) = c * u - s * v;
    x(2 * j + 1) = s * u + c * v;
  }
}

}  // namespace

CorpusDataset synth_corpus(const SynthSpec& spec, int corpus_index) {
  spec.validate();
  if (corpus_index < 0) throw ConfigError("synth: corpus index must be >= 0");
  const Matrix means = class_means(spec);
  const CorpusShift shift = corpus_shift(spec, means, corpus_index);
  const Matrix factors = factor_basis(spec);
  const std::string tag = "synth-" + std::to_string(corpus_index);

  Matrix subject_offsets(spec.subjects, kFeatureWidth);
  {
    Rng rng = make_rng(spec.seed, "subjects-" + std::to_string(corpus_index));
    for (int s = 0; s < spec.subjects; ++s)
      subject_offsets.row(s) = spec.subject_shift * random_unit(rng, kFeatureWidth).transpose();
  }

  const int n = spec.classes * spec.samples_per_class;
  CorpusDataset ds;
  ds.corpus_tag = tag;
  ds.features.resize(n, kFeatureWidth);
  ds.labels.reserve(n);
  ds.subjects.reserve(n);
  ds.sessions.reserve(n);
  Rng rng = make_rng(spec.seed, "samples-" + std::to_string(corpus_index));
  const int cells = spec.subjects * spec.sessions;
  int row = 0;
  for (int c = 0; c < spec.classes; ++c) {
    for (int k = 0; k < spec.samples_per_class; ++k, ++row) {
      const int cell = k % cells;
      const int subject = cell / spec.sessions;
      const int session = cell % spec.sessions + 1;
      RowVector x = means.row(c) + subject_offsets.row(subject);
      for (int d = 0; d < kFeatureWidth; ++d) x(d) += spec.noise_sigma * standard_normal(rng);
      if (spec.factor_rank > 0) {
        Vector z(spec.factor_rank);
        for (int r = 0; r < spec.factor_rank; ++r) z(r) = spec.factor_sigma * standard_normal(rng);
        x += (factors * z).transpose();
      }
      rotate_pairs(x, shift.angles);
      x += shift.translation.transpose();
      ds.features.row(row) = x;
      ds.labels.push_back(c);
      ds.subjects.push_back(subject);
      ds.sessions.push_back(session);
    }
  }
  return ds;
}

std::pair<CorpusDataset, CorpusDataset> synth_pair(const SynthSpec& spec) {
  return {synth_corpus(spec, 0), synth_corpus(spec, 1)};
}

SynthSpec synth_preset(std::string_view name) {
  SynthSpec s;
  if (name == "no-shift") {
    s.separation = 3.0;
    s.subject_shift = 0.5;
    return s;
  }
  if (name == "moderate-shift") {
    s.separation = 3.0;
    s.rotation_deg = 20.0;
    s.translation = 4.0;
    s.translation_alignment = 0.7;
    s.subject_shift = 0.5;
    return s;
  }
  if (name == "hard-shift") {
    s.separation = 3.0;
    s.rotation_deg = 40.0;
    s.translation = 5.0;
    s.translation_alignment = 0.8;
    s.subject_shift = 1.0;
    return s;
  }
  throw ConfigError("unknown synth preset '" + std::string(name) + "'");
}

std::vector<std::string> synth_preset_names() { return {"no-shift", "moderate-shift", "hard-shift"}; }

}  // namespace xcorpus::data
