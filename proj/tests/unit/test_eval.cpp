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

#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "xcorpus/core/errors.hpp"
#include "xcorpus/data/synth.hpp"
#include "xcorpus/eval/embeddings.hpp"
#include "xcorpus/eval/metrics.hpp"
#include "xcorpus/eval/probe.hpp"
#include "xcorpus/eval/protocol.hpp"
#include "xcorpus/eval/sweeps.hpp"
#include "xcorpus/training/trainer.hpp"

using namespace xcorpus;
using namespace xcorpus::eval;

namespace {

std::pair<data::CorpusDataset, data::CorpusDataset> toy(std::uint64_t seed, int per_class = 12) {
  data::SynthSpec spec = data::synth_preset("moderate-shift");
  spec.samples_per_class = per_class;
  spec.subjects = 3;
  spec.sessions = 2;
  spec.seed = seed;
  return data::synth_pair(spec);
}

training::TrainConfig tiny(training::Method m = training::Method::kMcdpl) {
  training::TrainConfig c;
  c.method = m;
  c.epochs = 1;
  c.batch_size = 8;
  c.arch.hidden1 = 8;
  c.arch.hidden2 = 8;
  c.arch.latent = 4;
  c.arch.disc_hidden1 = 4;
  c.arch.disc_hidden2 = 4;
  return c;
}

}  // namespace

TEST_CASE("metrics: confusion conventions") {
  const CountMatrix perfect = confusion_matrix(Labels{0, 1, 2, 2}, Labels{0, 1, 2, 2}, 3);
  CHECK(perfect(0, 0) == 1);
  CHECK(perfect(2, 2) == 2);
  CHECK(perfect.sum() == perfect.trace());
  const CountMatrix one = confusion_matrix(Labels{0}, Labels{2}, 3);
  CHECK(one(2, 0) == 1);
  CHECK(one.sum() == 1);
  CHECK_THROWS_AS(confusion_matrix(Labels{3}, Labels{0}, 3), DataError);
  CHECK_THROWS_AS(confusion_matrix(Labels{0, 1}, Labels{0}, 3), DimensionError);
}

TEST_CASE("metrics: row sums equal class counts and accuracy is the trace share") {
  const Labels truth{0, 0, 1, 1, 1, 2};
  const Labels pred{0, 1, 1, 2, 1, 0};
  const CountMatrix c = confusion_matrix(pred, truth, 3);
  CHECK(c.row(0).sum() == 2);
  CHECK(c.row(1).sum() == 3);
  CHECK(c.row(2).sum() == 1);
  CHECK(accuracy_from_confusion(c) == doctest::Approx(3.0 / 6.0));
  const auto recall = recall_from_confusion(c);
  CHECK(recall[0] == doctest::Approx(0.5));
  CHECK(recall[1] == doctest::Approx(2.0 / 3.0));
  CHECK(recall[2] == 0.0);
  CHECK(std::isnan(recall_from_confusion(confusion_matrix(Labels{0}, Labels{0}, 2))[1]));
}

TEST_CASE("metrics: mean and population std") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  CHECK(mean(v) == 2.5);
  CHECK(population_std(v) == doctest::Approx(std::sqrt(1.25)));
  CHECK(population_std(std::vector<double>{5.0}) == 0.0);
}

TEST_CASE("protocol: names round trip") {
  for (auto k : {ProtocolKind::kHoldoutSingleSession, ProtocolKind::kHoldoutCrossSession,
                 ProtocolKind::kLosoSingleSession, ProtocolKind::kLosoCrossSession})
    CHECK(parse_protocol(protocol_name(k)) == k);
  CHECK_THROWS_AS(parse_protocol("loso"), ConfigError);
}

TEST_CASE("protocol: hold-out single session keeps session 1 rows only") {
  const auto [s, t] = toy(1);
  const auto folds = make_folds(s, t, ProtocolKind::kHoldoutSingleSession);
  REQUIRE(folds.size() == 1);
  for (int session : folds[0].source.sessions) CHECK(session == 1);
  for (int session : folds[0].adapt.sessions) CHECK(session == 1);
  CHECK(folds[0].adapt == folds[0].evaluate);
  CHECK(make_folds(s, t, ProtocolKind::kHoldoutCrossSession)[0].source.size() == s.size());
}

TEST_CASE("protocol: leave-one-subject-out holds each target subject out entirely") {
  const auto [s, t] = toy(2);
  const auto folds = make_folds(s, t, ProtocolKind::kLosoCrossSession);
  REQUIRE(folds.size() == 3);
  std::size_t evaluated = 0;
  for (const auto& f : folds) {
    for (int subject : f.evaluate.subjects) CHECK(subject == f.id);
    for (int subject : f.adapt.subjects) CHECK(subject != f.id);
    CHECK(f.adapt.size() + f.evaluate.size() == t.size());
    evaluated += f.evaluate.size();
  }
  CHECK(evaluated == t.size());

  data::SynthSpec one = data::synth_preset("moderate-shift");
  one.subjects = 1;
  one.samples_per_class = 6;
  const auto [s1, t1] = data::synth_pair(one);
  CHECK_THROWS_AS(make_folds(s1, t1, ProtocolKind::kLosoSingleSession), ProtocolError);
}

TEST_CASE("protocol: run produces one cell per fold and seed") {
  const auto [s, t] = toy(3, 6);
  int hooks = 0;
  const RunMetrics m =
      run_protocol(s, t, ProtocolKind::kLosoCrossSession, tiny(), 2, [&](const FoldResult&) { ++hooks; });
  CHECK(m.cells.size() == 6);
  CHECK(hooks == 6);
  CHECK(m.confusion.sum() == 2 * static_cast<long long>(t.size()));
  CHECK(m.accuracy >= 0.0);
  CHECK(m.accuracy <= 1.0);
  const std::string table = results_table(m.cells, 3);
  CHECK(table.rfind("method,protocol,fold,seed,accuracy,recall_0,recall_1,recall_2\n", 0) == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 7);
  CHECK_THROWS_AS(run_protocol(s, t, ProtocolKind::kHoldoutCrossSession, tiny(), 0), ConfigError);
}

TEST_CASE("evaluate: confusion rows match the evaluated class counts") {
  const auto [s, t] = toy(4);
  const auto r = training::train(s, data::UnlabeledView(t), tiny());
  const FoldResult f = evaluate(r.model, t);
  const auto counts = t.class_counts();
  for (int c = 0; c < 3; ++c) CHECK(f.confusion.row(c).sum() == counts[c]);
  CHECK(f.accuracy == doctest::Approx(accuracy_from_confusion(f.confusion)));
  CHECK(f.method == "mcdpl");
}

TEST_CASE("sweeps: input validation") {
  const auto [s, t] = toy(5, 4);
  const std::vector<std::string> both{"pairwise", "pointwise"};
  CHECK_THROWS_AS(noise_sweep(s, t, tiny(), {}, both, 1), ConfigError);
  CHECK_THROWS_AS(noise_sweep(s, t, tiny(), {0.0, 0.3, 0.2}, both, 1), ConfigError);
  CHECK_THROWS_AS(noise_sweep(s, t, tiny(), {0.0, 1.2}, both, 1), ConfigError);
  CHECK_THROWS_AS(noise_sweep(s, t, tiny(), {0.0}, {"listwise"}, 1), ConfigError);
  CHECK_THROWS_AS(noise_sweep(s, t, tiny(training::Method::kPointwise), {0.0}, {"pairwise"}, 1), ConfigError);
  CHECK_THROWS_AS(run_ablation(s, t, tiny(training::Method::kLmmdpl), {"skip_step2"}, 1), ConfigError);
  CHECK_THROWS_AS(run_ablation(s, t, tiny(), {"no_everything"}, 1), ConfigError);
  CHECK_THROWS_AS(gamma_sweep(s, t, tiny(training::Method::kLmmdpl), {}, 1), ConfigError);
}

TEST_CASE("sweeps: clean cells reproduce plain training and the cache skips work") {
  const auto [s, t] = toy(6, 6);
  const training::TrainConfig cfg = tiny();
  SweepCache cache;
  int recorded = 0;
  cache.record = [&](const std::string&, double) { ++recorded; };
  const SweepResult r = noise_sweep(s, t, cfg, {0.0, 0.4}, {"pairwise"}, 1, &cache);
  REQUIRE(r.cells.size() == 2);
  const auto plain = training::train(s, data::UnlabeledView(t), cfg);
  CHECK(r.cells[0].accuracy == evaluate(plain.model, t).accuracy);
  CHECK(recorded == 2);
  const SweepResult again = noise_sweep(s, t, cfg, {0.0, 0.4}, {"pairwise"}, 1, &cache);
  CHECK(recorded == 2);
  CHECK(again.cells[1].accuracy == r.cells[1].accuracy);
  CHECK(noise_degradation(r, "pairwise", cfg.seed) == doctest::Approx(r.cells[0].accuracy - r.cells[1].accuracy));
  CHECK_THROWS_AS(noise_degradation(r, "pointwise", cfg.seed), ContractError);
  CHECK(r.summary_table().rfind("variant,value,mean_accuracy,std,delta\n", 0) == 0);
}

TEST_CASE("sweeps: empty ablation list yields the full model only") {
  const auto [s, t] = toy(7, 4);
  const SweepResult r = run_ablation(s, t, tiny(), {}, 1);
  REQUIRE(r.summary.size() == 1);
  CHECK(r.summary[0].variant == "full");
  CHECK(r.summary[0].delta == 0.0);
}

TEST_CASE("sweeps: gamma rows are relative to the best gamma") {
  const auto [s, t] = toy(8, 4);
  const SweepResult r = gamma_sweep(s, t, tiny(training::Method::kCddpl), {0.5, 1.0}, 1);
  REQUIRE(r.summary.size() == 2);
  CHECK(std::max(r.summary[0].delta, r.summary[1].delta) == 0.0);
}

TEST_CASE("embeddings: file round trip and separation score") {
  const auto [s, t] = toy(9, 5);
  const auto r = training::train(s, data::UnlabeledView(t), tiny());
  const EmbeddingTable table = embed(r.model, {{"source", &s}, {"target", &t}});
  CHECK(table.latent.rows() == static_cast<Eigen::Index>(s.size() + t.size()));
  CHECK(table.latent.cols() == 4);
  const auto path = std::filesystem::temp_directory_path() / "xcorpus_embed_unit.csv";
  write_embeddings(table, path);
  const EmbeddingTable back = read_embeddings(path);
  CHECK(back.latent == table.latent);
  CHECK(back.domains == table.domains);
  CHECK(back.labels == table.labels);
  std::filesystem::remove(path);

  Matrix x(4, 2);
  x << 0, 0, 0.1, 0, 10, 10, 10.1, 10;
  CHECK(class_separation(x, Labels{0, 0, 1, 1}, 2) > 50.0);
}

TEST_CASE("probe: separable data is classified and arguments are checked") {
  data::SynthSpec spec;
  spec.separation = 8.0;
  spec.samples_per_class = 60;
  const auto [s, t] = data::synth_pair(spec);
  CHECK(linear_probe_accuracy(s, t) > 0.95);
  CHECK_THROWS_AS(linear_probe_accuracy(s, t, 3, 0.0), ConfigError);
}
