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

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "xcorpus/autodiff/params.hpp"
#include "xcorpus/data/dataset.hpp"
#include "xcorpus/model/prototypes.hpp"
#include "xcorpus/training/config.hpp"

namespace xcorpus::training {

struct TrainedModel {
  TrainConfig config;
  ad::ParamStore params;
  model::PrototypeBank prototypes;

  int classifier_count() const;
};

// One row per epoch; columns depend on the method and are fixed per run.
struct TrainHistory {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string to_table() const;
};

struct StageCounters {
  long stage1 = 0;
  long stage2 = 0;
  long stage3_outer = 0;
  long stage3_inner = 0;
  bool operator==(const StageCounters&) const = default;
};

// Hooks called around every optimisation stage of a batch (stage 0 = single-stage methods).
struct StageEvent {
  int epoch = 0;
  int batch = 0;
  int stage = 0;
  int inner_iterations = 0;  // filled on stage end
  const ad::ParamStore* params = nullptr;
};

struct TrainObserver {
  std::function<void(const StageEvent&)> on_stage_begin;
  std::function<void(const StageEvent&)> on_stage_end;
};

struct TrainOptions {
  // Target labels for per-epoch monitoring only; never enter any loss.
  const Labels* monitor_labels = nullptr;
  std::optional<std::filesystem::path> checkpoint_path;  // written every cfg.checkpoint_every epochs
  std::optional<std::filesystem::path> resume_from;
  // Stop after this many epochs in total (for interruption tests); the run stays resumable.
  std::optional<int> stop_after_epoch;
  TrainObserver observer;
};

struct TrainResult {
  TrainedModel model;
  TrainHistory history;
  StageCounters counters;
  int epochs_completed = 0;
};

TrainResult train(const data::CorpusDataset& source, const data::UnlabeledView& target, const TrainConfig& cfg,
                  const TrainOptions& options = {});

TrainResult train_lmmdpl(const data::CorpusDataset& source, const data::UnlabeledView& target, TrainConfig cfg);
TrainResult train_cddpl(const data::CorpusDataset& source, const data::UnlabeledView& target, TrainConfig cfg);
TrainResult train_mcdpl(const data::CorpusDataset& source, const data::UnlabeledView& target, TrainConfig cfg);
TrainResult train_dannpl(const data::CorpusDataset& source, const data::UnlabeledView& target, TrainConfig cfg);
TrainResult train_baseline_pointwise(const data::CorpusDataset& source, const data::UnlabeledView& target,
                                     TrainConfig cfg);

struct Prediction {
  Labels labels;
  Matrix probs;
};

Prediction predict(const TrainedModel& model, const Matrix& x);

// Per-classifier probabilities for McdPL models: {ada, rms}.
std::pair<Matrix, Matrix> predict_pair(const TrainedModel& model, const Matrix& x);

double accuracy(std::span<const int> predicted, std::span<const int> truth);

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace xcorpus::training
