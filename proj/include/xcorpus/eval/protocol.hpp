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
#include <string>
#include <string_view>
#include <vector>

#include "xcorpus/data/dataset.hpp"
#include "xcorpus/eval/metrics.hpp"
#include "xcorpus/training/trainer.hpp"

namespace xcorpus::eval {

enum class ProtocolKind { kHoldoutSingleSession, kHoldoutCrossSession, kLosoSingleSession, kLosoCrossSession };

std::string_view protocol_name(ProtocolKind k);
ProtocolKind parse_protocol(std::string_view name);
bool is_loso(ProtocolKind k);

struct FoldResult {
  std::string method;
  std::string protocol;
  int fold = 0;  // held-out target subject for loso kinds, 0 for hold-out
  std::uint64_t seed = 0;
  double accuracy = 0.0;
  std::vector<double> recall;
  CountMatrix confusion;
};

struct RunMetrics {
  double accuracy = 0.0;  // mean over fold x seed cells
  double std = 0.0;       // population std over the same cells
  CountMatrix confusion;  // summed over cells
  std::vector<double> recall;
  std::vector<FoldResult> cells;
};

FoldResult evaluate(const training::TrainedModel& model, const data::CorpusDataset& ds);

// One adaptation task: labelled source, unlabeled adaptation target and the labelled evaluation set.
struct Fold {
  int id = 0;
  data::CorpusDataset source;
  data::CorpusDataset adapt;
  data::CorpusDataset evaluate;
};

// Raises ProtocolError for a loso fold whose adaptation remainder is empty.
std::vector<Fold> make_folds(const data::CorpusDataset& source, const data::CorpusDataset& target,
                             ProtocolKind kind);

using CellHook = std::function<void(const FoldResult&)>;

// Seeds cfg.seed + k for k in [0, n_seeds).
RunMetrics run_protocol(const data::CorpusDataset& source, const data::CorpusDataset& target, ProtocolKind kind,
                        const training::TrainConfig& cfg, int n_seeds, const CellHook& on_cell = {});

RunMetrics summarize(std::vector<FoldResult> cells, int classes);

// Columnar results table: method,protocol,fold,seed,accuracy,recall_0..recall_{C-1}.
std::string results_header(int classes);
std::string results_row(const FoldResult& r);
std::string results_table(const std::vector<FoldResult>& cells, int classes);

}  // namespace xcorpus::eval
