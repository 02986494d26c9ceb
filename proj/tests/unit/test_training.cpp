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

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <numeric>

#include "xcorpus/core/errors.hpp"
#include "xcorpus/data/synth.hpp"
#include "xcorpus/model/network.hpp"
#include "xcorpus/model/pairwise.hpp"
#include "xcorpus/training/serialize.hpp"
#include "xcorpus/training/trainer.hpp"

using namespace xcorpus;
using namespace xcorpus::training;

namespace {

struct Toy {
  data::CorpusDataset source;
  data::CorpusDataset target;
};

Toy toy(std::uint64_t seed = 0, int per_class = 12) {
  data::SynthSpec spec = data::synth_preset("moderate-shift");
  spec.samples_per_class = per_class;
  spec.subjects = 2;
  spec.sessions = 2;
  spec.seed = seed;
  auto [s, t] = data::synth_pair(spec);
  return {std::move(s), std::move(t)};
}

TrainConfig small(Method m, int epochs = 2) {
  TrainConfig c;
  c.method = m;
  c.epochs = epochs;
  c.batch_size = 8;
  c.arch.hidden1 = 16;
  c.arch.hidden2 = 8;
  c.arch.latent = 8;
  c.arch.disc_hidden1 = 8;
  c.arch.disc_hidden2 = 4;
  return c;
}

bool same_bits(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

bool same_params(const ad::ParamStore& a, const ad::ParamStore& b) {
  if (a.names() != b.names()) return false;
  for (const auto& name : a.names()) {
    const auto& p = a.at(name);
    const auto& q = b.at(name);
    if (!same_bits(p.value, q.value) || !same_bits(p.first_moment, q.first_moment) ||
        !same_bits(p.second_moment, q.second_moment) || p.steps != q.steps)
      return false;
  }
  return true;
}

std::map<std::string, Matrix> snapshot(const ad::ParamStore& store, const std::string& prefix) {
  std::map<std::string, Matrix> out;
  for (const auto& name : store.names_with_prefix(prefix)) out[name] = store.value(name);
  return out;
}

bool unchanged(const std::map<std::string, Matrix>& before, const ad::ParamStore& store) {
  for (const auto& [name, value] : before)
    if (!same_bits(value, store.value(name))) return false;
  return !before.empty();
}

template <typename T>
concept HasLabelCall = requires(const T& v) { v.labels(); };
template <typename T>
concept HasLabelMember = requires(const T& v) { v.labels; };

const std::vector<Method> kAllMethods = {Method::kSourceOnly, Method::kDannpl, Method::kLmmdpl,
                                         Method::kCddpl,      Method::kMcdpl,  Method::kPointwise};

}  // namespace

TEST_CASE("config: defaults") {
  const TrainConfig c;
  CHECK(c.learning_rate == 1e-3);
  CHECK(c.epochs == 300);
  CHECK(c.batch_size == 256);
  CHECK(c.l2_weight == 1e-5);
  CHECK(c.inner_steps == 4);
  CHECK(c.upper == 0.8);
  CHECK(c.lower == 0.2);
  CHECK(c.prototype_momentum == 0.9);
  CHECK(c.arch.dropout == 0.5);
  CHECK(c.alpha == 1.0);
  CHECK(c.beta == 1.0);
  CHECK(default_gamma(Method::kMcdpl) == 1.0);
}

TEST_CASE("config: invalid values are rejected") {
  const auto bad = [](auto mutate) {
    TrainConfig c;
    mutate(c);
    CHECK_THROWS_AS(c.validate(), ConfigError);
  };
  bad([](TrainConfig& c) { c.learning_rate = 0.0; });
  bad([](TrainConfig& c) { c.batch_size = 0; });
  bad([](TrainConfig& c) { c.inner_steps = 0; });
  bad([](TrainConfig& c) { c.lower = 0.8; });
  bad([](TrainConfig& c) { c.upper = 1.2; });
  bad([](TrainConfig& c) { c.prototype_momentum = 1.5; });
  bad([](TrainConfig& c) { c.arch.classes = 1; });
  bad([](TrainConfig& c) { c.arch.dropout = 1.0; });
  bad([](TrainConfig& c) {
    c.method = Method::kLmmdpl;
    c.ablation.skip_step2 = true;
  });
  bad([](TrainConfig& c) { c.ablation.gamma_value = 0.5; });
  bad([](TrainConfig& c) {
    c.method = Method::kPointwise;
    c.ablation.no_prototypes = true;
  });
  bad([](TrainConfig& c) {
    c.arch.classes = 9;
    c.ablation.no_prototypes = true;
  });
  Ablation a;
  CHECK_THROWS_AS(set_ablation(a, "no_everything"), ConfigError);
  for (const auto& name : kAblationNames) {
    Ablation b;
    set_ablation(b, name);
    CHECK(b.any());
  }
  CHECK_NOTHROW(TrainConfig{}.validate());
}

TEST_CASE("config: method names round trip") {
  for (Method m : kAllMethods) CHECK(parse_method(method_name(m)) == m);
  CHECK_THROWS_AS(parse_method("mcd"), ConfigError);
}

TEST_CASE("serialize: json round trip keeps every field") {
  TrainConfig c = small(Method::kCddpl, 7);
  c.gamma = 1.5;
  c.alpha = 0.3;
  c.kernel = losses::KernelSpec::fixed_rbf({0.5, 2.0});
  c.ablation.no_discriminator = true;
  c.seed = 99;
  c.stage3_discrepancy = false;
  TrainConfig back = train_from_json(train_to_json(c));
  back.arch = architecture_from_json(architecture_to_json(c.arch));
  CHECK(config_fingerprint(back) == config_fingerprint(c));
  CHECK(back.gamma == c.gamma);
  CHECK(back.kernel.bandwidths == c.kernel.bandwidths);
  Json unknown = train_to_json(c);
  unknown["learning-rate"] = 0.1;
  CHECK_THROWS_AS(train_from_json(unknown), ConfigError);
}

TEST_CASE("training: every method runs and records finite losses") {
  const Toy d = toy(1);
  for (Method m : kAllMethods) {
    CAPTURE(method_name(m));
    const auto r = train(d.source, data::UnlabeledView(d.target), small(m));
    CHECK(r.epochs_completed == 2);
    REQUIRE(r.history.rows.size() == 2);
    for (const auto& row : r.history.rows)
      for (std::size_t c = 0; c + 1 < row.size(); ++c) CHECK(std::isfinite(row[c]));
    CHECK(r.model.classifier_count() == (m == Method::kMcdpl ? 2 : 1));
    const auto pred = predict(r.model, d.target.features);
    CHECK(pred.labels.size() == d.target.size());
    CHECK(((pred.probs.rowwise().sum().array() - 1.0).abs() < 1e-12).all());
  }
}

TEST_CASE("training: four-sample smoke run") {
  Toy d = toy(2, 2);
  d.source = d.source.subset(std::vector<std::size_t>{0, 1, 2, 3});
  d.target = d.target.subset(std::vector<std::size_t>{0, 1, 2, 3});
  for (Method m : {Method::kLmmdpl, Method::kCddpl, Method::kMcdpl}) {
    const auto r = train(d.source, data::UnlabeledView(d.target), small(m, 1));
    CHECK(std::isfinite(r.history.rows[0][1]));
  }
}

TEST_CASE("training: source labels outside the class range are a config error") {
  Toy d = toy(3, 4);
  d.source.labels[0] = 3;
  CHECK_THROWS_AS(train(d.source, data::UnlabeledView(d.target), small(Method::kMcdpl)), ConfigError);
}

TEST_CASE("mcd choreography: freezes and inner-loop count") {
  const Toy d = toy(4);
  TrainConfig cfg = small(Method::kMcdpl, 2);
  cfg.inner_steps = 3;
  std::map<std::string, Matrix> before_extract, before_disc, before_cls;
  long stage2_checks = 0, stage3_checks = 0;
  bool frozen_ok = true;
  TrainOptions opts;
  opts.observer.on_stage_begin = [&](const StageEvent& e) {
    if (e.stage == 2) {
      before_extract = snapshot(*e.params, model::kExtractor);
      before_disc = snapshot(*e.params, model::kDiscriminator);
    } else if (e.stage == 3) {
      before_cls = snapshot(*e.params, model::kClassifierAda);
      const auto rms = snapshot(*e.params, model::kClassifierRms);
      before_cls.insert(rms.begin(), rms.end());
    }
  };
  opts.observer.on_stage_end = [&](const StageEvent& e) {
    if (e.stage == 2) {
      frozen_ok = frozen_ok && unchanged(before_extract, *e.params) && unchanged(before_disc, *e.params);
      ++stage2_checks;
    } else if (e.stage == 3) {
      frozen_ok = frozen_ok && unchanged(before_cls, *e.params) && e.inner_iterations == 3;
      ++stage3_checks;
    }
  };
  const auto r = train(d.source, data::UnlabeledView(d.target), cfg, opts);
  const long batches = 2 * ((36 + 7) / 8);
  CHECK(frozen_ok);
  CHECK(stage2_checks == batches);
  CHECK(stage3_checks == batches);
  CHECK(r.counters.stage1 == batches);
  CHECK(r.counters.stage2 == batches);
  CHECK(r.counters.stage3_outer == batches);
  CHECK(r.counters.stage3_inner == 3 * batches);
  for (const auto& [name, p] : r.model.params) CHECK(!p.frozen);
}

TEST_CASE("mcd choreography: skipped stages leave their counters at zero") {
  const Toy d = toy(5, 6);
  TrainConfig cfg = small(Method::kMcdpl, 1);
  cfg.ablation.skip_step2 = true;
  auto r = train(d.source, data::UnlabeledView(d.target), cfg);
  CHECK(r.counters.stage2 == 0);
  CHECK(r.counters.stage3_outer == r.counters.stage1);
  cfg.ablation = {};
  cfg.ablation.skip_step3 = true;
  r = train(d.source, data::UnlabeledView(d.target), cfg);
  CHECK(r.counters.stage3_inner == 0);
  cfg.ablation = {};
  cfg.ablation.single_classifier = true;
  r = train(d.source, data::UnlabeledView(d.target), cfg);
  CHECK(r.model.classifier_count() == 1);
  CHECK(r.counters.stage2 == 0);
}

TEST_CASE("mcd: the two classifiers start from different parameters") {
  const Toy d = toy(6, 4);
  const auto r = train(d.source, data::UnlabeledView(d.target), small(Method::kMcdpl, 0));
  CHECK(!same_bits(r.model.params.value(model::kClassifierAda + "theta"),
                   r.model.params.value(model::kClassifierRms + "theta")));
  const auto [pa, pr] = predict_pair(r.model, d.target.features);
  CHECK(predict(r.model, d.target.features).probs.isApprox(0.5 * (pa + pr), 1e-14));
}

TEST_CASE("determinism: identical configs give bitwise-identical models") {
  const Toy d = toy(7);
  for (Method m : {Method::kMcdpl, Method::kLmmdpl, Method::kPointwise}) {
    const auto a = train(d.source, data::UnlabeledView(d.target), small(m));
    const auto b = train(d.source, data::UnlabeledView(d.target), small(m));
    CHECK(same_params(a.model.params, b.model.params));
    CHECK(a.model.prototypes == b.model.prototypes);
    CHECK(a.history.to_table() == b.history.to_table());
  }
  TrainConfig other = small(Method::kMcdpl);
  other.seed = 1;
  CHECK(!same_params(train(d.source, data::UnlabeledView(d.target), other).model.params,
                     train(d.source, data::UnlabeledView(d.target), small(Method::kMcdpl)).model.params));
}

TEST_CASE("resume: an interrupted run continues bitwise") {
  const Toy d = toy(8);
  const auto dir = std::filesystem::temp_directory_path() / "xcorpus_resume_unit";
  std::filesystem::create_directories(dir);
  for (Method m : {Method::kMcdpl, Method::kCddpl}) {
    TrainConfig cfg = small(m, 4);
    cfg.checkpoint_every = 1;
    const auto full = train(d.source, data::UnlabeledView(d.target), cfg);
    TrainOptions first;
    first.checkpoint_path = dir / "ckpt.xckp";
    first.stop_after_epoch = 2;
    const auto half = train(d.source, data::UnlabeledView(d.target), cfg, first);
    CHECK(half.epochs_completed == 2);
    TrainOptions second;
    second.checkpoint_path = dir / "ckpt.xckp";
    second.resume_from = dir / "ckpt.xckp";
    const auto resumed = train(d.source, data::UnlabeledView(d.target), cfg, second);
    CHECK(resumed.epochs_completed == 4);
    CHECK(same_params(full.model.params, resumed.model.params));
    CHECK(full.model.prototypes == resumed.model.prototypes);
    CHECK(full.history.to_table() == resumed.history.to_table());
    CHECK(full.counters == resumed.counters);

    TrainConfig changed = cfg;
    changed.learning_rate = 2e-3;
    CHECK_THROWS_AS(train(d.source, data::UnlabeledView(d.target), changed, second), ConfigError);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("model files round trip bitwise") {
  const Toy d = toy(9);
  const auto r = train(d.source, data::UnlabeledView(d.target), small(Method::kMcdpl));
  const auto path = std::filesystem::temp_directory_path() / "xcorpus_model_unit.xckp";
  save_model(r.model, path);
  const TrainedModel back = load_model(path);
  CHECK(same_params(r.model.params, back.params));
  CHECK(r.model.prototypes == back.prototypes);
  CHECK(config_fingerprint(back.config) == config_fingerprint(r.model.config));
  CHECK(predict(back, d.target.features).probs == predict(r.model, d.target.features).probs);
  std::filesystem::remove(path);
}

TEST_CASE("no leak: the target view has no label accessor") {
  static_assert(!HasLabelCall<data::UnlabeledView>);
  static_assert(!HasLabelMember<data::UnlabeledView>);
  static_assert(HasLabelMember<data::CorpusDataset>);
  CHECK(!HasLabelMember<data::UnlabeledView>);
}

TEST_CASE("no leak: permuting target labels changes nothing") {
  const Toy d = toy(10);
  data::CorpusDataset shuffled = d.target;
  std::reverse(shuffled.labels.begin(), shuffled.labels.end());
  for (Method m : {Method::kMcdpl, Method::kLmmdpl, Method::kCddpl}) {
    const auto a = train(d.source, data::UnlabeledView(d.target), small(m));
    const auto b = train(d.source, data::UnlabeledView(shuffled), small(m));
    CHECK(same_params(a.model.params, b.model.params));
  }
}

TEST_CASE("monitoring labels never feed gradients") {
  const Toy d = toy(11);
  TrainOptions opts;
  opts.monitor_labels = &d.target.labels;
  const auto watched = train(d.source, data::UnlabeledView(d.target), small(Method::kMcdpl), opts);
  const auto blind = train(d.source, data::UnlabeledView(d.target), small(Method::kMcdpl));
  CHECK(same_params(watched.model.params, blind.model.params));
  CHECK(std::isfinite(watched.history.rows.back().back()));
  CHECK(std::isnan(blind.history.rows.back().back()));
  Labels wrong(d.target.size() - 1, 0);
  opts.monitor_labels = &wrong;
  CHECK_THROWS_AS(train(d.source, data::UnlabeledView(d.target), small(Method::kMcdpl), opts), DataError);
}

TEST_CASE("ablations: identity theta and free anchors") {
  const Toy d = toy(12);
  TrainConfig cfg = small(Method::kMcdpl, 3);
  cfg.ablation.identity_theta = true;
  auto r = train(d.source, data::UnlabeledView(d.target), cfg);
  CHECK(!r.model.params.contains(model::kClassifierRms + "theta"));
  cfg.ablation = {};
  cfg.ablation.no_prototypes = true;
  r = train(d.source, data::UnlabeledView(d.target), cfg);
  REQUIRE(r.model.params.contains(model::kClassifierRms + "psi"));
  REQUIRE(r.model.params.contains(model::kClassifierAda + "psi"));
  // After training the anchor rows are ordered so that no relabelling of the
  // predicted classes fits the source labels better.
  for (const auto& prefix : {model::kClassifierAda, model::kClassifierRms}) {
    TrainedModel single = r.model;
    const auto [pa, pr] = predict_pair(single, d.source.features);
    const Labels pred = model::argmax_rows(prefix == model::kClassifierAda ? pa : pr);
    std::vector<int> perm{0, 1, 2};
    const auto hits = [&](const std::vector<int>& p) {
      long h = 0;
      for (std::size_t i = 0; i < pred.size(); ++i) h += p[pred[i]] == d.source.labels[i];
      return h;
    };
    const long identity = hits(perm);
    while (std::next_permutation(perm.begin(), perm.end())) CHECK(hits(perm) <= identity);
  }
}

TEST_CASE("accuracy helper") {
  CHECK(accuracy(Labels{0, 1, 2, 2}, Labels{0, 1, 1, 2}) == 0.75);
  CHECK_THROWS_AS(accuracy(Labels{0}, Labels{0, 1}), DimensionError);
}
