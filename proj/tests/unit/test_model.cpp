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

#include <filesystem>

#include "xcorpus/core/errors.hpp"
#include "xcorpus/autodiff/gradcheck.hpp"
#include "xcorpus/model/checkpoint.hpp"
#include "xcorpus/model/network.hpp"
#include "xcorpus/model/pairwise.hpp"
#include "xcorpus/model/prototypes.hpp"

using namespace xcorpus;
using namespace xcorpus::model;

namespace {

Architecture small_arch() {
  Architecture a;
  a.input = 6;
  a.hidden1 = 5;
  a.hidden2 = 4;
  a.latent = 3;
  a.disc_hidden1 = 4;
  a.disc_hidden2 = 3;
  a.classes = 3;
  return a;
}

Matrix random_matrix(Rng& rng, Eigen::Index r, Eigen::Index c) {
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = standard_normal(rng);
  return m;
}

}  // namespace

TEST_CASE("extractor: zero parameters give zero features") {
  const Architecture arch = small_arch();
  ad::ParamStore store;
  Rng rng(1);
  init_extractor(store, arch, rng);
  for (auto& [name, p] : store) p.value.setZero();
  const Matrix f = extract_features(store, Matrix::Random(4, arch.input), arch);
  CHECK(f.rows() == 4);
  CHECK(f.cols() == arch.latent);
  CHECK(f.isZero());
}

TEST_CASE("extractor: rows are processed independently") {
  const Architecture arch = small_arch();
  ad::ParamStore store;
  Rng rng(2);
  init_extractor(store, arch, rng);
  const Matrix x = random_matrix(rng, 2, arch.input);
  const Matrix both = extract_features(store, x, arch);
  const Matrix first = extract_features(store, x.topRows(1), arch);
  CHECK((both.row(0) - first.row(0)).norm() == 0.0);
  CHECK_THROWS_AS(extract_features(store, Matrix::Zero(2, arch.input + 1), arch), DimensionError);
}

TEST_CASE("production extractor shape and initial weight bounds") {
  const Architecture arch;
  ad::ParamStore store;
  Rng rng(3);
  init_extractor(store, arch, rng);
  CHECK(store.value("extractor.W1").rows() == 310);
  CHECK(store.value("extractor.W1").cols() == 128);
  CHECK(store.value("extractor.W2").cols() == 64);
  CHECK(store.value("extractor.W3").cols() == 64);
  CHECK(store.value("extractor.W1").cwiseAbs().maxCoeff() <= 1.0 / std::sqrt(310.0));
}

TEST_CASE("tape and tape-free extraction agree") {
  const Architecture arch = small_arch();
  ad::ParamStore store;
  Rng rng(4);
  init_extractor(store, arch, rng);
  const Matrix x = random_matrix(rng, 5, arch.input);
  ad::Tape t;
  const Matrix a = extract_features(t, store, t.constant(x), arch).value();
  CHECK((a - extract_features(store, x, arch)).norm() == 0.0);
}

TEST_CASE("extractor and discriminator gradients match finite differences") {
  const Architecture arch = small_arch();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    ad::ParamStore store;
    Rng rng(seed);
    init_extractor(store, arch, rng);
    init_discriminator(store, arch, rng);
    const Matrix x = random_matrix(rng, 4, arch.input);
    const auto r = ad::finite_diff_check(
        [&](ad::Tape& t, const ad::ParamStore& p) {
          Rng unused(0);
          const auto f = extract_features(t, p, t.constant(x), arch);
          return ad::sum(ad::log(discriminate(t, p, f, arch, ad::Mode::kEval, unused)));
        },
        store);
    CHECK(r.max_rel_error < 1e-4);
  }
}

TEST_CASE("discriminator: sigmoid range, zero parameters, eval determinism") {
  const Architecture arch = small_arch();
  ad::ParamStore store;
  Rng rng(5);
  init_discriminator(store, arch, rng);
  const Matrix f = random_matrix(rng, 6, arch.latent);
  ad::Tape t;
  Rng r1(1), r2(2);
  const Matrix p1 = discriminate(t, store, t.constant(f), arch, ad::Mode::kEval, r1).value();
  const Matrix p2 = discriminate(t, store, t.constant(f), arch, ad::Mode::kEval, r2).value();
  CHECK(p1 == p2);
  CHECK(p1.cols() == 1);
  CHECK((p1.array() > 0.0).all());
  CHECK((p1.array() < 1.0).all());
  for (auto& [name, p] : store) p.value.setZero();
  ad::Tape fresh;
  const Matrix half = discriminate(fresh, store, fresh.constant(f), arch, ad::Mode::kTrain, r1).value();
  CHECK((half.array() == 0.5).all());
}

TEST_CASE("classifier init: scaled identity plus bounded uniform jitter") {
  const Architecture arch;
  ad::ParamStore store;
  Rng rng(6);
  init_classifier(store, kClassifierRms, arch, rng);
  const Matrix theta = store.value("classifier_rms.theta");
  CHECK(theta.rows() == 64);
  CHECK(theta.cols() == 64);
  const Matrix jitter = theta - kThetaDiagonal * Matrix::Identity(64, 64);
  CHECK(jitter.cwiseAbs().maxCoeff() <= 1.0 / 8.0);
  CHECK(jitter.cwiseAbs().maxCoeff() > 0.1);
  CHECK(std::abs(jitter.mean()) < 0.01);
}

TEST_CASE("prototype bank: mean with m = 0, frozen with m = 1") {
  PrototypeBank bank(2, 2, 0.0);
  Matrix f(3, 2);
  f << 1, 3, 3, 5, 9, 9;
  const std::vector<int> labels = {0, 0, 1};
  bank.update(f, labels);
  CHECK(bank.psi()(0, 0) == 2.0);
  CHECK(bank.psi()(0, 1) == 4.0);
  CHECK(bank.counts()[0] == 2);

  PrototypeBank frozen(2, 2, 1.0);
  frozen.update(f, labels);
  const Matrix before = frozen.psi();
  Matrix g(2, 2);
  g << 100, 100, -100, -100;
  frozen.update(g, std::vector<int>{0, 1});
  CHECK(frozen.psi() == before);
  CHECK_THROWS_AS(PrototypeBank(2, 2, 1.5), ConfigError);
  CHECK_THROWS_AS(bank.update(f, std::vector<int>{0, 0, 5}), DataError);
  CHECK_THROWS_AS(bank.update(Matrix::Zero(3, 3), labels), DimensionError);
}

TEST_CASE("prototype bank: classes absent from a batch keep their rows") {
  PrototypeBank bank(3, 1, 0.5);
  Matrix f(3, 1);
  f << 1, 2, 3;
  bank.update(f, std::vector<int>{0, 1, 2});
  Matrix g(1, 1);
  g << 5;
  bank.update(g, std::vector<int>{0});
  CHECK(bank.psi()(0, 0) == 3.0);
  CHECK(bank.psi()(1, 0) == 2.0);
  CHECK(bank.psi()(2, 0) == 3.0);
}

TEST_CASE("prototype bank: EMA converges to the class means") {
  PrototypeBank bank(2, 4, 0.9);
  Rng rng(7);
  Matrix truth(2, 4);
  truth << 1, -2, 3, 0.5, -1, 4, 2, -3;
  for (int b = 0; b < 100; ++b) {
    Matrix f(64, 4);
    std::vector<int> labels(64);
    for (int i = 0; i < 64; ++i) {
      labels[i] = i % 2;
      for (int k = 0; k < 4; ++k) f(i, k) = truth(labels[i], k) + 0.2 * standard_normal(rng);
    }
    bank.update(f, labels);
  }
  for (int c = 0; c < 2; ++c) CHECK((bank.psi().row(c) - truth.row(c)).norm() < 0.02 * truth.row(c).norm());
}

TEST_CASE("prototype rebuild equals the exact class mean") {
  PrototypeBank bank(2, 3, 0.9);
  Rng rng(8);
  const Matrix f = random_matrix(rng, 10, 3);
  std::vector<int> labels = {0, 1, 0, 1, 1, 0, 0, 1, 0, 1};
  bank.rebuild(f, labels);
  Vector s0 = Vector::Zero(3);
  for (int i = 0; i < 10; ++i)
    if (labels[i] == 0) s0 += f.row(i).transpose();
  CHECK((bank.psi().row(0).transpose() - s0 / 5.0).norm() < 1e-12);
}

TEST_CASE("interaction: identity theta and zero prototypes") {
  Matrix psi(2, 3);
  psi << 1, 2, 2, 0, 3, 4;
  const Matrix gamma = interaction(psi, Matrix::Identity(3, 3), psi);
  CHECK(gamma(0, 0) == 9.0);
  CHECK(gamma(1, 1) == 25.0);
  CHECK(interaction(psi, Matrix::Identity(3, 3), Matrix::Zero(2, 3)).isZero());
}

TEST_CASE("interaction matches a triple-loop product") {
  Rng rng(9);
  const Matrix f = random_matrix(rng, 5, 4), theta = random_matrix(rng, 4, 4), psi = random_matrix(rng, 3, 4);
  const Matrix g = interaction(f, theta, psi);
  for (int i = 0; i < 5; ++i)
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) s += f(i, a) * theta(a, b) * psi(c, b);
      CHECK(g(i, c) == doctest::Approx(s).epsilon(1e-12));
    }
  ad::Tape t;
  const Matrix tg = interaction(t.constant(f), t.constant(theta), psi).value();
  CHECK((tg - g).norm() < 1e-12);
}

TEST_CASE("class probabilities") {
  Matrix g(3, 3);
  g << 2, 2, 2, 10, 0, 0, -5, 7, 1;
  const Matrix p = class_probs(g);
  CHECK(p(0, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(p(1, 0) > 0.9999);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(p.row(i).sum() - 1.0) < 1e-12);
}

TEST_CASE("similarity of one-hot and uniform rows") {
  Matrix p(3, 3);
  p << 1, 0, 0, 1, 0, 0, 0, 1, 0;
  const Matrix phi = similarity(p);
  CHECK(phi(0, 1) == 1.0);
  CHECK(phi(0, 2) == 0.0);
  const Matrix u = Matrix::Constant(2, 3, 1.0 / 3.0);
  CHECK(similarity(u)(0, 1) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("pseudo-label rule") {
  Matrix phi(3, 3);
  phi << 0.3, 0.9, 0.1, 0.9, 0.3, 0.5, 0.1, 0.5, 0.3;
  const PairTargets t = pseudo_label(phi, 0.8, 0.2);
  CHECK(t.mu(0, 1) == 1.0);
  CHECK(t.mask(0, 1) == 1.0);
  CHECK(t.mu(0, 2) == 0.0);
  CHECK(t.mask(0, 2) == 1.0);
  CHECK(t.mask(1, 2) == 0.0);
  CHECK(t.mu(0, 0) == 1.0);
  CHECK(t.mask(0, 0) == 1.0);
  CHECK_THROWS_AS(pseudo_label(phi, 0.2, 0.2), ConfigError);
  CHECK_THROWS_AS(pseudo_label(phi, 0.2, 0.8), ConfigError);
}

TEST_CASE("pseudo-label mask shrinks as the band widens") {
  Rng rng(10);
  const Matrix p = class_probs(random_matrix(rng, 12, 3));
  const Matrix phi = similarity(p);
  double prev = 1e9;
  for (double w : {0.0, 0.1, 0.2, 0.3, 0.4}) {
    const auto t = pseudo_label(phi, 0.5 + w + 1e-9, 0.5 - w);
    const double included = t.mask.sum();
    CHECK(included <= prev);
    prev = included;
  }
}

TEST_CASE("label pairs and argmax") {
  const std::vector<int> labels = {0, 1, 0};
  const PairTargets t = label_pairs(labels);
  CHECK(t.mu(0, 2) == 1.0);
  CHECK(t.mu(0, 1) == 0.0);
  CHECK(t.mask.sum() == 9.0);
  Matrix m(2, 3);
  m << 1, 3, 3, 0, 0, -1;
  CHECK(argmax_rows(m) == std::vector<int>{1, 0});
}

TEST_CASE("checkpoint round-trip and corruption errors") {
  ad::ParamStore store;
  Rng rng(11);
  init_extractor(store, small_arch(), rng);
  store.at("extractor.W1").steps = 7;
  store.at("extractor.W1").first_moment = Matrix::Constant(6, 5, 0.25);
  store.freeze("extractor.b");
  Checkpoint c;
  c.config = "{\"k\":1}";
  c.params = store;
  c.prototypes = PrototypeBank(3, 3, 0.9);
  c.prototypes.update(random_matrix(rng, 3, 3), std::vector<int>{0, 1, 2});
  c.state = std::string("\0state\x01", 7);
  const std::string bytes = encode_checkpoint(c);
  const Checkpoint d = decode_checkpoint(bytes);
  CHECK(d.config == c.config);
  CHECK(d.state == c.state);
  CHECK(d.prototypes == c.prototypes);
  CHECK(d.params.names() == store.names());
  for (const auto& [name, p] : store) {
    CHECK(d.params.at(name).value == p.value);
    CHECK(d.params.at(name).first_moment == p.first_moment);
    CHECK(d.params.at(name).steps == p.steps);
    CHECK(d.params.at(name).frozen == p.frozen);
  }
  std::string bad = bytes;
  bad[0] = 'Y';
  CHECK_THROWS_AS(decode_checkpoint(bad), BadMagicError);
  bad = bytes;
  bad[4] = 9;
  CHECK_THROWS_AS(decode_checkpoint(bad), VersionError);
  CHECK_THROWS_AS(decode_checkpoint(bytes.substr(0, bytes.size() - 3)), TruncatedError);
  CHECK_THROWS_AS(decode_checkpoint(bytes + "x"), DataError);

  const auto path = std::filesystem::temp_directory_path() / "xcorpus_model_test.xckp";
  save_checkpoint(c, path);
  CHECK(encode_checkpoint(load_checkpoint(path)) == bytes);
  std::filesystem::remove(path);
}
