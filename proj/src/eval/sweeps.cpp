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

#include "xcorpus/eval/sweeps.hpp"

#include <cstdio>

#include "xcorpus/core/errors.hpp"
#include "xcorpus/data/noise.hpp"
#include "xcorpus/eval/metrics.hpp"
#include "xcorpus/training/trainer.hpp"

namespace xcorpus::eval {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double train_and_score(const data::CorpusDataset& source, const data::CorpusDataset& target,
                       const training::TrainConfig& cfg) {
  const auto trained = training::train(source, data::UnlabeledView(target), cfg);
  return evaluate(trained.model, target).accuracy;
}

// Runs or recalls one cell.
SweepCell cell(const std::string& variant, double value, std::uint64_t seed, SweepCache* cache,
               const std::function<double()>& compute) {
  SweepCell c{variant, value, seed, 0.0};
  const std::string key = c.key();
  if (cache) {
    auto it = cache->done.find(key);
    if (it != cache->done.end()) {
      c.accuracy = it->second;
      return c;
    }
  }
  c.accuracy = compute();
  if (cache) {
    cache->done[key] = c.accuracy;
    if (cache->record) cache->record(key, c.accuracy);
  }
  return c;
}

SweepSummary summarize_variant(const std::vector<SweepCell>& cells, const std::string& variant, double value) {
  std::vector<double> accs;
  for (const auto& c : cells)
    if (c.variant == variant && c.value == value) accs.push_back(c.accuracy);
  return {variant, value, mean(accs), population_std(accs), 0.0};
}

}  // namespace

std::string SweepCell::key() const { return variant + "|" + fmt(value) + "|" + std::to_string(seed); }

std::string SweepResult::cells_table() const {
  std::string out = "variant,value,seed,accuracy\n";
  for (const auto& c : cells) out += c.variant + "," + fmt(c.value) + "," + std::to_string(c.seed) + "," + fmt(c.accuracy) + "\n";
  return out;
}

std::string SweepResult::summary_table() const {
  std::string out = "variant,value,mean_accuracy,std,delta\n";
  for (const auto& s : summary)
    out += s.variant + "," + fmt(s.value) + "," + fmt(s.mean_accuracy) + "," + fmt(s.std) + "," + fmt(s.delta) + "\n";
  return out;
}

SweepResult noise_sweep(const data::CorpusDataset& source, const data::CorpusDataset& target,
                        const training::TrainConfig& cfg, const std::vector<double>& fractions,
                        const std::vector<std::string>& strategies, int n_seeds, SweepCache* cache) {
  if (fractions.empty()) throw ConfigError("noise grid is empty");
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    if (!(fractions[k] >= 0.0 && fractions[k] <= 1.0)) throw ConfigError("noise fractions must lie in [0, 1]");
    if (k > 0 && !(fractions[k] > fractions[k - 1])) throw ConfigError("noise grid must be strictly increasing");
  }
  if (strategies.empty()) throw ConfigError("noise sweep needs at least one strategy");
  if (n_seeds < 1) throw ConfigError("n_seeds must be >= 1");
  std::vector<training::TrainConfig> configs;
  for (const auto& s : strategies) {
    training::TrainConfig c = cfg;
    if (s == "pointwise") {
      c.method = training::Method::kPointwise;
      c.ablation = {};
    } else if (s == "pairwise") {
      if (c.method == training::Method::kPointwise) throw ConfigError("pairwise strategy needs a pairwise method");
    } else {
      throw ConfigError("unknown noise strategy '" + s + "' (expected pairwise or pointwise)");
    }
    c.validate();
    configs.push_back(c);
  }

  SweepResult r;
  for (std::size_t si = 0; si < strategies.size(); ++si) {
    for (double f : fractions) {
      for (int k = 0; k < n_seeds; ++k) {
        training::TrainConfig c = configs[si];
        c.seed = cfg.seed + static_cast<std::uint64_t>(k);
        r.cells.push_back(cell(strategies[si], f, c.seed, cache, [&] {
          const auto noisy =
              data::inject_label_noise(source, f, derive_seed(c.seed, "noise"), c.arch.classes);
          return train_and_score(noisy, target, c);
        }));
      }
    }
    SweepSummary clean = summarize_variant(r.cells, strategies[si], fractions.front());
    for (double f : fractions) {
      SweepSummary s = summarize_variant(r.cells, strategies[si], f);
      s.delta = s.mean_accuracy - clean.mean_accuracy;
      r.summary.push_back(s);
    }
  }
  return r;
}

double noise_degradation(const SweepResult& r, const std::string& strategy, std::uint64_t seed) {
  const SweepCell* first = nullptr;
  const SweepCell* last = nullptr;
  for (const auto& c : r.cells) {
    if (c.variant != strategy || c.seed != seed) continue;
    if (!first || c.value < first->value) first = &c;
    if (!last || c.value > last->value) last = &c;
  }
  if (!first) throw ContractError("noise_degradation: no cells for strategy '" + strategy + "'");
  return first->accuracy - last->accuracy;
}

SweepResult run_ablation(const data::CorpusDataset& source, const data::CorpusDataset& target,
                         const training::TrainConfig& cfg, const std::vector<std::string>& toggles, int n_seeds,
                         SweepCache* cache) {
  if (n_seeds < 1) throw ConfigError("n_seeds must be >= 1");
  std::vector<std::pair<std::string, training::TrainConfig>> variants{{"full", cfg}};
  for (const auto& t : toggles) {
    training::TrainConfig c = cfg;
    training::set_ablation(c.ablation, t);
    c.validate();
    variants.emplace_back(t, c);
  }
  cfg.validate();
  SweepResult r;
  for (const auto& [name, vcfg] : variants) {
    for (int k = 0; k < n_seeds; ++k) {
      training::TrainConfig c = vcfg;
      c.seed = cfg.seed + static_cast<std::uint64_t>(k);
      r.cells.push_back(cell(name, 0.0, c.seed, cache, [&] { return train_and_score(source, target, c); }));
    }
  }
  const SweepSummary full = summarize_variant(r.cells, "full", 0.0);
  for (const auto& [name, vcfg] : variants) {
    SweepSummary s = summarize_variant(r.cells, name, 0.0);
    s.delta = s.mean_accuracy - full.mean_accuracy;
    r.summary.push_back(s);
  }
  return r;
}

SweepResult gamma_sweep(const data::CorpusDataset& source, const data::CorpusDataset& target,
                        const training::TrainConfig& cfg, const std::vector<double>& gammas, int n_seeds,
                        SweepCache* cache) {
  if (gammas.empty()) throw ConfigError("gamma grid is empty");
  if (n_seeds < 1) throw ConfigError("n_seeds must be >= 1");
  std::vector<training::TrainConfig> configs;
  for (double g : gammas) {
    training::TrainConfig c = cfg;
    c.gamma = g;
    c.ablation.gamma_value.reset();
    c.validate();
    configs.push_back(c);
  }
  SweepResult r;
  for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
    for (int k = 0; k < n_seeds; ++k) {
      training::TrainConfig c = configs[gi];
      c.seed = cfg.seed + static_cast<std::uint64_t>(k);
      r.cells.push_back(cell("gamma", gammas[gi], c.seed, cache, [&] { return train_and_score(source, target, c); }));
    }
  }
  double best = -1.0;
  for (double g : gammas) best = std::max(best, summarize_variant(r.cells, "gamma", g).mean_accuracy);
  for (double g : gammas) {
    SweepSummary s = summarize_variant(r.cells, "gamma", g);
    s.delta = s.mean_accuracy - best;
    r.summary.push_back(s);
  }
  return r;
}

}  // namespace xcorpus::eval
