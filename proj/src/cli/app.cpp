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

#include "xcorpus/cli/app.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "xcorpus/cli/run_config.hpp"
#include "xcorpus/core/binary_io.hpp"
#include "xcorpus/core/errors.hpp"
#include "xcorpus/data/io.hpp"
#include "xcorpus/eval/embeddings.hpp"
#include "xcorpus/eval/protocol.hpp"
#include "xcorpus/eval/sweeps.hpp"
#include "xcorpus/training/trainer.hpp"

namespace xcorpus::cli {

namespace {

struct Common {
  std::string config;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
};

RunConfig load_run_config(const Common& common) {
  Json doc = load_json(common.config);
  for (const auto& o : common.overrides) apply_override(doc, o);
  if (common.seed) {
    doc["seed"] = *common.seed;
    if (doc.contains("data") && doc["data"].contains("synth")) doc["data"]["synth"]["seed"] = *common.seed;
    if (doc.contains("train")) doc["train"]["seed"] = *common.seed;
  }
  return resolve_config(doc);
}

void write_resolved(const RunConfig& cfg) {
  io::write_file_atomic(cfg.output_dir / "resolved_config.json", to_json(cfg).dump(2) + "\n");
}

data::CorpusDataset load_corpus(const RunConfig& cfg, const std::filesystem::path& path, const std::string& tag) {
  if (!std::filesystem::exists(path)) throw DataError("dataset " + path.string() + " does not exist (run gen first)");
  data::CorpusDataset ds = cfg.data.format == "csv" ? data::load_csv(path, tag) : data::load_dataset(path);
  ds.validate();
  ds.validate_labels(cfg.train.arch.classes);
  return ds;
}

std::string format_pct(double acc, double sd) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.2f%% +/- %.2f%%", 100.0 * acc, 100.0 * sd);
  return buf;
}

int cmd_gen(const Common& common, std::ostream& out) {
  const RunConfig cfg = load_run_config(common);
  const auto [source, target] = data::synth_pair(cfg.data.synth);
  for (const auto& [ds, path] : {std::pair{&source, cfg.data.source}, std::pair{&target, cfg.data.target}}) {
    if (cfg.data.format == "csv") {
      data::save_csv(*ds, path);
    } else {
      data::save_dataset(*ds, path);
    }
    out << ds->corpus_tag << " -> " << path.string() << " (" << ds->size() << " rows; per-class";
    for (long long n : ds->class_counts(cfg.data.synth.classes)) out << ' ' << n;
    out << ")\n";
  }
  write_resolved(cfg);
  return kExitOk;
}

int cmd_train(const Common& common, bool resume, std::ostream& out) {
  const RunConfig cfg = load_run_config(common);
  const auto source = load_corpus(cfg, cfg.data.source, "source");
  const auto target = load_corpus(cfg, cfg.data.target, "target");
  write_resolved(cfg);
  training::TrainOptions opts;
  if (cfg.eval.monitor) opts.monitor_labels = &target.labels;
  const auto ckpt = cfg.output_dir / "checkpoint.xckp";
  opts.checkpoint_path = ckpt;
  if (resume) {
    if (!std::filesystem::exists(ckpt)) throw DataError("no checkpoint to resume at " + ckpt.string());
    opts.resume_from = ckpt;
  }
  const auto result = training::train(source, data::UnlabeledView(target), cfg.train, opts);
  training::save_model(result.model, cfg.output_dir / "model.xckp");
  io::write_file_atomic(cfg.output_dir / "history.tsv", result.history.to_table());
  out << "trained " << training::method_name(cfg.train.method) << " for " << result.epochs_completed
      << " epochs -> " << (cfg.output_dir / "model.xckp").string() << "\n";
  return kExitOk;
}

void check_architecture(const RunConfig& cfg, const training::TrainedModel& model, const std::string& path) {
  if (!(model.config.arch == cfg.train.arch))
    throw VersionError("checkpoint " + path + " architecture differs from the configured model section");
}

int cmd_eval(const Common& common, const std::string& checkpoint, std::ostream& out) {
  const RunConfig cfg = load_run_config(common);
  const auto source = load_corpus(cfg, cfg.data.source, "source");
  const auto target = load_corpus(cfg, cfg.data.target, "target");
  write_resolved(cfg);
  eval::RunMetrics metrics;
  if (!checkpoint.empty()) {
    const auto model = training::load_model(checkpoint);
    check_architecture(cfg, model, checkpoint);
    eval::FoldResult r = eval::evaluate(model, target);
    r.protocol = "checkpoint";
    metrics = eval::summarize({r}, cfg.train.arch.classes);
  } else {
    metrics = eval::run_protocol(source, target, cfg.eval.protocol, cfg.train, cfg.eval.seeds);
  }
  io::write_file_atomic(cfg.output_dir / "results.csv", eval::results_table(metrics.cells, cfg.train.arch.classes));
  out << training::method_name(cfg.train.method) << " "
      << (checkpoint.empty() ? std::string(eval::protocol_name(cfg.eval.protocol)) : std::string("checkpoint"))
      << ": " << format_pct(metrics.accuracy, metrics.std) << "\n";
  out << "confusion (rows = truth, columns = predicted):\n";
  for (Eigen::Index i = 0; i < metrics.confusion.rows(); ++i) {
    for (Eigen::Index j = 0; j < metrics.confusion.cols(); ++j) out << (j ? " " : "  ") << metrics.confusion(i, j);
    out << "\n";
  }
  return kExitOk;
}

eval::SweepCache open_cache(const std::filesystem::path& path) {
  eval::SweepCache cache;
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
      const auto tab = line.rfind('\t');
      if (tab == std::string::npos) continue;
      try {
        cache.done[line.substr(0, tab)] = std::stod(line.substr(tab + 1));
      } catch (const std::logic_error&) {
        throw DataError(path.string() + ": corrupt sweep cache line");
      }
    }
  }
  cache.record = [path](const std::string& key, double acc) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", acc);
    std::ofstream o(path, std::ios::app);
    o << key << '\t' << buf << '\n';
    if (!o) throw IoError("cannot append to " + path.string());
  };
  return cache;
}

int cmd_sweep(const Common& common, const std::string& kind, std::ostream& out) {
  const RunConfig cfg = load_run_config(common);
  const auto source = load_corpus(cfg, cfg.data.source, "source");
  const auto target = load_corpus(cfg, cfg.data.target, "target");
  write_resolved(cfg);
  std::filesystem::create_directories(cfg.output_dir);
  eval::SweepCache cache = open_cache(cfg.output_dir / ("sweep_" + kind + ".cache"));
  eval::SweepResult r;
  if (kind == "noise") {
    r = eval::noise_sweep(source, target, cfg.train, cfg.eval.noise_grid, cfg.eval.strategies, cfg.eval.seeds, &cache);
  } else if (kind == "gamma") {
    r = eval::gamma_sweep(source, target, cfg.train, cfg.eval.gamma_grid, cfg.eval.seeds, &cache);
  } else if (kind == "ablation") {
    r = eval::run_ablation(source, target, cfg.train, cfg.eval.ablations, cfg.eval.seeds, &cache);
  } else {
    throw ConfigError("unknown sweep kind '" + kind + "' (expected noise, gamma or ablation)");
  }
  io::write_file_atomic(cfg.output_dir / ("sweep_" + kind + "_cells.csv"), r.cells_table());
  io::write_file_atomic(cfg.output_dir / ("sweep_" + kind + ".csv"), r.summary_table());
  out << r.summary_table();
  return kExitOk;
}

int cmd_export(const Common& common, const std::string& checkpoint, std::ostream& out) {
  const RunConfig cfg = load_run_config(common);
  const auto source = load_corpus(cfg, cfg.data.source, "source");
  const auto target = load_corpus(cfg, cfg.data.target, "target");
  const auto model = training::load_model(checkpoint);
  check_architecture(cfg, model, checkpoint);
  write_resolved(cfg);
  const auto path = cfg.output_dir / "embeddings.csv";
  eval::export_embeddings(model, {{"source", &source}, {"target", &target}}, path);
  out << "wrote " << source.size() + target.size() << " rows to " << path.string() << "\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cross-corpus EEG emotion recognition: data generation, training, evaluation and sweeps"};
  app.require_subcommand(1);
  Common common;
  bool resume = false;
  std::string checkpoint;
  std::string sweep_kind;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", common.config, "JSON run configuration")->required();
    sub->add_option("--set", common.overrides, "override: section.key=value")->take_all();
    sub->add_option("--seed", common.seed, "root seed override");
  };
  auto* gen = app.add_subcommand("gen", "write synthetic source and target corpora");
  add_common(gen);
  auto* train = app.add_subcommand("train", "train the configured method");
  add_common(train);
  train->add_flag("--resume", resume, "continue from the run's periodic checkpoint");
  auto* evalc = app.add_subcommand("eval", "run the configured protocol or score a checkpoint");
  add_common(evalc);
  evalc->add_option("--checkpoint", checkpoint, "trained model to score on the target corpus");
  auto* sweep = app.add_subcommand("sweep", "noise, gamma or ablation sweep (resumable)");
  add_common(sweep);
  sweep->add_option("kind", sweep_kind, "noise | gamma | ablation")->required();
  auto* exp = app.add_subcommand("export-embeddings", "write latent features for external plotting");
  add_common(exp);
  exp->add_option("--checkpoint", checkpoint, "trained model")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (gen->parsed()) return cmd_gen(common, out);
    if (train->parsed()) return cmd_train(common, resume, out);
    if (evalc->parsed()) return cmd_eval(common, checkpoint, out);
    if (sweep->parsed()) return cmd_sweep(common, sweep_kind, out);
    if (exp->parsed()) return cmd_export(common, checkpoint, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}

}  // namespace xcorpus::cli
