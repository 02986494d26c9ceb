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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xcorpus/data/dataset.hpp"
#include "xcorpus/eval/protocol.hpp"
#include "xcorpus/training/config.hpp"

namespace xcorpus::eval {

// Completed cells keyed by SweepCell::key(); lets an interrupted sweep skip finished work.
struct SweepCache {
  std::map<std::string, double> done;
  std::function<void(const std::string& key, double accuracy)> record;
};

struct SweepCell {
  std::string variant;  // strategy, toggle or gamma label
  double value = 0.0;   // noise fraction or gamma; 0 for ablations
  std::uint64_t seed = 0;
  double accuracy = 0.0;

  std::string key() const;
};

struct SweepSummary {
  std::string variant;
  double value = 0.0;
  double mean_accuracy = 0.0;
  double std = 0.0;
  double delta = 0.0;  // vs the reference row (clean data or full model)
};

struct SweepResult {
  std::vector<SweepCell> cells;
  std::vector<SweepSummary> summary;

  std::string cells_table() const;
  std::string summary_table() const;
};

inline const std::vector<double> kDefaultNoiseGrid = {0.0, 0.1, 0.2, 0.3, 0.4};
inline const std::vector<double> kDefaultGammaGrid = {0.2, 0.5, 1.0, 1.5, 2.0};

// Source labels only are corrupted; pairwise = cfg.method, pointwise = the cross-entropy baseline.
// Fractions must lie in [0, 1] and be strictly increasing.
SweepResult noise_sweep(const data::CorpusDataset& source, const data::CorpusDataset& target,
                        const training::TrainConfig& cfg, const std::vector<double>& fractions,
                        const std::vector<std::string>& strategies, int n_seeds, SweepCache* cache = nullptr);

// Accuracy drop from the first to the last fraction for one strategy and seed.
double noise_degradation(const SweepResult& r, const std::string& strategy, std::uint64_t seed);

// Full model plus one run per toggle; toggles are validated before any training.
SweepResult run_ablation(const data::CorpusDataset& source, const data::CorpusDataset& target,
                         const training::TrainConfig& cfg, const std::vector<std::string>& toggles, int n_seeds,
                         SweepCache* cache = nullptr);

SweepResult gamma_sweep(const data::CorpusDataset& source, const data::CorpusDataset& target,
                        const training::TrainConfig& cfg, const std::vector<double>& gammas, int n_seeds,
                        SweepCache* cache = nullptr);

}  // namespace xcorpus::eval
