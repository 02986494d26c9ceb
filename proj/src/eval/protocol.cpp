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

#include "xcorpus/eval/protocol.hpp"

#include <algorithm>
#include <cstdio>

#include "xcorpus/core/errors.hpp"

namespace xcorpus::eval {

std::string_view protocol_name(ProtocolKind k) {
  switch (k) {
    case ProtocolKind::kHoldoutSingleSession: return "holdout-single-session";
    case ProtocolKind::kHoldoutCrossSession: return "holdout-cross-session";
    case ProtocolKind::kLosoSingleSession: return "loso-single-session";
    case ProtocolKind::kLosoCrossSession: return "loso-cross-session";
  }
  return "unknown";
}

ProtocolKind parse_protocol(std::string_view name) {
  for (auto k : {ProtocolKind::kHoldoutSingleSession, ProtocolKind::kHoldoutCrossSession,
                 ProtocolKind::kLosoSingleSession, ProtocolKind::kLosoCrossSession})
    if (protocol_name(k) == name) return k;
  throw ConfigError("unknown protocol '" + std::string(name) + "'");
}

bool is_loso(ProtocolKind k) {
  return k == ProtocolKind::kLosoSingleSession || k == ProtocolKind::kLosoCrossSession;
}

FoldResult evaluate(const training::TrainedModel& model, const data::CorpusDataset& ds) {
  FoldResult r;
  r.method = std::string(training::method_name(model.config.method));
  r.seed = model.config.seed;
  const auto pred = training::predict(model, ds.features);
  r.confusion = confusion_matrix(pred.labels, ds.labels, model.config.arch.classes);
  r.accuracy = accuracy_from_confusion(r.confusion);
  r.recall = recall_from_confusion(r.confusion);
  return r;
}

std::vector<Fold> make_folds(const data::CorpusDataset& source, const data::CorpusDataset& target,
                             ProtocolKind kind) {
  const bool single = kind == ProtocolKind::kHoldoutSingleSession || kind == ProtocolKind::kLosoSingleSession;
  const std::vector<int> first{1};
  const data::CorpusDataset src = single ? source.with_sessions(first) : source;
  const data::CorpusDataset tgt = single ? target.with_sessions(first) : target;
  if (src.size() == 0 || tgt.size() == 0) throw ProtocolError("protocol selects no rows");
  std::vector<Fold> folds;
  if (!is_loso(kind)) {
    folds.push_back({0, src, tgt, tgt});
    return folds;
  }
  for (int subject : tgt.distinct_subjects()) {
    Fold f;
    f.id = subject;
    f.source = src;
    f.evaluate = tgt.filter([&](std::size_t i) { return tgt.subjects[i] == subject; });
    f.adapt = tgt.filter([&](std::size_t i) { return tgt.subjects[i] != subject; });
    if (f.adapt.size() == 0)
      throw ProtocolError("loso fold for subject " + std::to_string(subject) + " leaves no adaptation target");
    folds.push_back(std::move(f));
  }
  return folds;
}

RunMetrics summarize(std::vector<FoldResult> cells, int classes) {
  std::sort(cells.begin(), cells.end(), [](const FoldResult& a, const FoldResult& b) {
    return std::tie(a.fold, a.seed) < std::tie(b.fold, b.seed);
  });
  RunMetrics m;
  m.confusion = CountMatrix::Zero(classes, classes);
  std::vector<double> accs;
  for (const auto& c : cells) {
    accs.push_back(c.accuracy);
    m.confusion += c.confusion;
  }
  m.accuracy = mean(accs);
  m.std = population_std(accs);
  m.recall = recall_from_confusion(m.confusion);
  m.cells = std::move(cells);
  return m;
}

RunMetrics run_protocol(const data::CorpusDataset& source, const data::CorpusDataset& target, ProtocolKind kind,
                        const training::TrainConfig& cfg, int n_seeds, const CellHook& on_cell) {
  if (n_seeds < 1) throw ConfigError("n_seeds must be >= 1");
  cfg.validate();
  std::vector<FoldResult> cells;
  for (const Fold& fold : make_folds(source, target, kind)) {
    const data::UnlabeledView adapt(fold.adapt);
    for (int k = 0; k < n_seeds; ++k) {
      training::TrainConfig run_cfg = cfg;
      run_cfg.seed = cfg.seed + static_cast<std::uint64_t>(k);
      const auto trained = training::train(fold.source, adapt, run_cfg);
      FoldResult r = evaluate(trained.model, fold.evaluate);
      r.protocol = std::string(protocol_name(kind));
      r.fold = fold.id;
      if (on_cell) on_cell(r);
      cells.push_back(std::move(r));
    }
  }
  return summarize(std::move(cells), cfg.arch.classes);
}

std::string results_header(int classes) {
  std::string h = "method,protocol,fold,seed,accuracy";
  for (int c = 0; c < classes; ++c) h += ",recall_" + std::to_string(c);
  return h;
}

std::string results_row(const FoldResult& r) {
  char buf[64];
  std::string row = r.method + "," + r.protocol + "," + std::to_string(r.fold) + "," + std::to_string(r.seed);
  std::snprintf(buf, sizeof(buf), ",%.17g", r.accuracy);
  row += buf;
  for (double v : r.recall) {
    std::snprintf(buf, sizeof(buf), ",%.17g", v);
    row += buf;
  }
  return row;
}

std::string results_table(const std::vector<FoldResult>& cells, int classes) {
  std::string out = results_header(classes) + "\n";
  for (const auto& c : cells) out += results_row(c) + "\n";
  return out;
}

}  // namespace xcorpus::eval
