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

#include "xcorpus/core/errors.hpp"
#include "xcorpus/autodiff/gradcheck.hpp"
#include "xcorpus/losses/discrepancy.hpp"
#include "xcorpus/losses/kernel.hpp"
#include "xcorpus/losses/objectives.hpp"
#include "xcorpus/training/config.hpp"

using namespace xcorpus;
using namespace xcorpus::losses;

namespace {

Matrix fixture_a() {
  Matrix a(3, 3);
  a << 0.1, -0.3, 0.5, 0.7, 0.2, -0.4, -0.6, 0.9, 0.05;
  return a;
}

Matrix fixture_b() {
  Matrix b(2, 3);
  b << 0.3, 0.3, -0.2, -0.5, 0.1, 0.8;
  return b;
}

Matrix random_matrix(Rng& rng, Eigen::Index r, Eigen::Index c) {
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = standard_normal(rng);
  return m;
}

Matrix random_probs(Rng& rng, Eigen::Index r, Eigen::Index c) {
  Matrix p = random_matrix(rng, r, c).array().exp().matrix();
  for (Eigen::Index i = 0; i < r; ++i) p.row(i) /= p.row(i).sum();
  return p;
}

std::vector<int> random_labels(Rng& rng, int n, int classes) {
  std::vector<int> l(n);
  for (int i = 0; i < n; ++i) l[i] = i < classes ? i : static_cast<int>(uniform_index(rng, classes));
  return l;
}

// Naive references written directly from the definitions.
double ref_kernel(const RowVector& a, const RowVector& b, const std::vector<double>& sigma2) {
  double s = 0.0;
  for (double v : sigma2) s += std::exp(-(a - b).squaredNorm() / (2.0 * v));
  return s / sigma2.size();
}

double ref_mmd(const Matrix& x, const Matrix& y, const std::vector<double>& sigma2) {
  double xx = 0, xy = 0, yy = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.rows(); ++j) xx += ref_kernel(x.row(i), x.row(j), sigma2);
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < y.rows(); ++j) xy += ref_kernel(x.row(i), y.row(j), sigma2);
  for (Eigen::Index i = 0; i < y.rows(); ++i)
    for (Eigen::Index j = 0; j < y.rows(); ++j) yy += ref_kernel(y.row(i), y.row(j), sigma2);
  const double n = static_cast<double>(x.rows()), m = static_cast<double>(y.rows());
  return xx / (n * n) - 2.0 * xy / (n * m) + yy / (m * m);
}

Matrix rows_with(const Matrix& x, std::span<const int> labels, int c) {
  std::vector<Eigen::Index> idx;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == c) idx.push_back(static_cast<Eigen::Index>(i));
  Matrix out(static_cast<Eigen::Index>(idx.size()), x.cols());
  for (std::size_t k = 0; k < idx.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = x.row(idx[k]);
  return out;
}

double ref_lmmd(const Matrix& xs, std::span<const int> ls, const Matrix& xt, const Matrix& pt,
                const std::vector<double>& sigma2) {
  double total = 0.0;
  int valid = 0;
  for (Eigen::Index c = 0; c < pt.cols(); ++c) {
    Vector ws = Vector::Zero(xs.rows());
    for (Eigen::Index i = 0; i < xs.rows(); ++i) ws(i) = ls[i] == c ? 1.0 : 0.0;
    Vector wt = pt.col(c);
    if (ws.sum() == 0.0 || wt.sum() == 0.0) continue;
    ws /= ws.sum();
    wt /= wt.sum();
    ++valid;
    double s = 0.0;
    for (Eigen::Index i = 0; i < xs.rows(); ++i)
      for (Eigen::Index j = 0; j < xs.rows(); ++j) s += ws(i) * ws(j) * ref_kernel(xs.row(i), xs.row(j), sigma2);
    for (Eigen::Index i = 0; i < xt.rows(); ++i)
      for (Eigen::Index j = 0; j < xt.rows(); ++j) s += wt(i) * wt(j) * ref_kernel(xt.row(i), xt.row(j), sigma2);
    for (Eigen::Index i = 0; i < xs.rows(); ++i)
      for (Eigen::Index j = 0; j < xt.rows(); ++j)
        s -= 2.0 * ws(i) * wt(j) * ref_kernel(xs.row(i), xt.row(j), sigma2);
    total += s;
  }
  return valid ? total / valid : 0.0;
}

double ref_cdd(const Matrix& xs, std::span<const int> ls, const Matrix& xt, std::span<const int> lt, int classes,
               const std::vector<double>& sigma2) {
  double intra = 0, inter = 0;
  int ni = 0, ne = 0;
  for (int c = 0; c < classes; ++c)
    for (int d = 0; d < classes; ++d) {
      const Matrix a = rows_with(xs, ls, c), b = rows_with(xt, lt, d);
      if (a.rows() == 0 || b.rows() == 0) continue;
      const double v = ref_mmd(a, b, sigma2);
      if (c == d) {
        intra += v;
        ++ni;
      } else {
        inter += v;
        ++ne;
      }
    }
  return (ni ? intra / ni : 0.0) - (ne ? inter / ne : 0.0);
}

}  // namespace

TEST_CASE("rbf kernel matches frozen reference values") {
  const Matrix k = kernel_matrix(fixture_a(), fixture_b(), KernelSpec::fixed_rbf({0.5, 1.0, 2.0}));
  const double expect[3][2] = {{0.5680591551690729, 0.6529793575946591},
                               {0.8438209595610345, 0.311879855820045},
                               {0.49406426731537095, 0.4977448498084134}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) CHECK(k(i, j) == doctest::Approx(expect[i][j]).epsilon(1e-13));
  CHECK(median_sqdist(fixture_a(), fixture_b()) == doctest::Approx(1.32625).epsilon(1e-14));
}

TEST_CASE("mmd variants match frozen reference values") {
  CHECK(mmd(fixture_a(), fixture_b(), KernelSpec::fixed_rbf({0.5, 1.0, 2.0})) ==
        doctest::Approx(0.18751424284725093).epsilon(1e-12));
  CHECK(mmd(fixture_a(), fixture_b(), KernelSpec::median_rbf()) ==
        doctest::Approx(0.12678016320090701).epsilon(1e-12));
  CHECK(mmd(fixture_a(), fixture_b(), KernelSpec::linear()) == doctest::Approx(0.09472222222222225).epsilon(1e-12));
}

TEST_CASE("lmmd and cdd match frozen reference values") {
  Matrix pt(2, 2);
  pt << 0.7, 0.3, 0.2, 0.8;
  const std::vector<int> ls = {0, 1, 0};
  CHECK(lmmd(fixture_a(), ls, fixture_b(), pt, KernelSpec::fixed_rbf({0.5, 1.0, 2.0})) ==
        doctest::Approx(0.6326543590954317).epsilon(1e-12));
  CHECK(cdd(fixture_a(), ls, fixture_b(), std::vector<int>{1, 0}, 2, KernelSpec::fixed_rbf({0.5, 1.0, 2.0})) ==
        doctest::Approx(-0.5762414962003037).epsilon(1e-12));
}

TEST_CASE("kernel basics: unit diagonal, linear identity, PSD, empty input") {
  Rng rng(1);
  const Matrix a = random_matrix(rng, 6, 4);
  const Matrix k = kernel_matrix(a, a, KernelSpec::median_rbf());
  for (int i = 0; i < 6; ++i) CHECK(k(i, i) == doctest::Approx(1.0));
  CHECK((k - k.transpose()).norm() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Matrix> es(k);
  CHECK(es.eigenvalues().minCoeff() > -1e-10);
  CHECK((k.array() > 0.0).all());
  CHECK((k.array() <= 1.0).all());
  const Matrix lin = kernel_matrix(Matrix::Identity(3, 3), Matrix::Identity(3, 3), KernelSpec::linear());
  CHECK(lin == Matrix::Identity(3, 3));
  CHECK_THROWS_AS(kernel_matrix(Matrix(0, 4), a, KernelSpec::median_rbf()), ContractError);
  CHECK_THROWS_AS(KernelSpec::fixed_rbf({}).validate(), ConfigError);
  CHECK_THROWS_AS(KernelSpec::fixed_rbf({-1.0}).validate(), ConfigError);
}

TEST_CASE("kernel discrepancies agree with naive references over 50 seeds") {
  const std::vector<double> sigmas = {0.5, 1.0, 2.0, 4.0};
  std::vector<double> sigma2;
  for (double s : sigmas) sigma2.push_back(s * s);
  const KernelSpec spec = KernelSpec::fixed_rbf(sigmas);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const Matrix xs = random_matrix(rng, 9, 5), xt = random_matrix(rng, 9, 5);
    const auto ls = random_labels(rng, 9, 3);
    auto lt = random_labels(rng, 9, 3);
    lt[8] = -1;
    const Matrix pt = random_probs(rng, 9, 3);
    CHECK(std::abs(mmd(xs, xt, spec) - ref_mmd(xs, xt, sigma2)) < 1e-10);
    CHECK(std::abs(lmmd(xs, ls, xt, pt, spec) - ref_lmmd(xs, ls, xt, pt, sigma2)) < 1e-10);
    CHECK(std::abs(cdd(xs, ls, xt, lt, 3, spec) - ref_cdd(xs, ls, xt, lt, 3, sigma2)) < 1e-10);
  }
}

TEST_CASE("mmd is zero for identical samples and closed form on singletons") {
  Rng rng(2);
  const Matrix x = random_matrix(rng, 8, 3);
  CHECK(std::abs(mmd(x, x, KernelSpec::median_rbf())) < 1e-12);
  Matrix a(1, 2), b(1, 2);
  a << 1, 0;
  b << 0, 1;
  CHECK(mmd(a, b, KernelSpec::linear()) == doctest::Approx(2.0));
}

TEST_CASE("lmmd weights") {
  const auto w = lmmd_weights(std::vector<int>{1, 1, 1, 0}, 3);
  CHECK(w.weights(0, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(w.weights(3, 0) == 1.0);
  CHECK_FALSE(w.present[2]);
  Rng rng(3);
  const auto p = lmmd_weights(random_probs(rng, 7, 4));
  for (int c = 0; c < 4; ++c) CHECK(std::abs(p.weights.col(c).sum() - 1.0) < 1e-12);
}

TEST_CASE("lmmd vanishes when target matches the source pattern") {
  Rng rng(4);
  const Matrix f = random_matrix(rng, 6, 3);
  const std::vector<int> l = {0, 1, 2, 0, 1, 2};
  Matrix onehot = Matrix::Zero(6, 3);
  for (int i = 0; i < 6; ++i) onehot(i, l[i]) = 1.0;
  CHECK(std::abs(lmmd(f, l, f, onehot, KernelSpec::median_rbf())) < 1e-10);
  // One class reduces to a plain MMD with uniform weights.
  const Matrix g = random_matrix(rng, 4, 3);
  CHECK(lmmd(f, std::vector<int>(6, 0), g, Matrix::Ones(4, 1), KernelSpec::fixed_rbf({1.0})) ==
        doctest::Approx(mmd(f, g, KernelSpec::fixed_rbf({1.0}))).epsilon(1e-12));
}

TEST_CASE("cdd: separated clusters, unconfident targets and class-count guard") {
  Rng rng(5);
  Matrix centres(3, 4);
  centres << 10, 0, 0, 0, 0, 10, 0, 0, 0, 0, 10, 0;
  Matrix xs(9, 4), xt(9, 4);
  std::vector<int> l(9);
  for (int i = 0; i < 9; ++i) {
    l[i] = i % 3;
    xs.row(i) = centres.row(l[i]) + 0.01 * random_matrix(rng, 1, 4);
    xt.row(i) = xs.row(i);
  }
  const KernelSpec spec = KernelSpec::fixed_rbf({1.0});
  const double value = cdd(xs, l, xt, l, 3, spec);
  CHECK(value < 0.0);
  std::vector<double> s2 = {1.0};
  double intra = 0.0;
  for (int c = 0; c < 3; ++c) intra += ref_mmd(rows_with(xs, l, c), rows_with(xt, l, c), s2);
  CHECK(intra / 3.0 < 1e-6);
  CHECK(value == doctest::Approx(ref_cdd(xs, l, xt, l, 3, s2)).epsilon(1e-10));
  CHECK(cdd(xs, l, xt, std::vector<int>(9, -1), 3, spec) == 0.0);
  CHECK_THROWS_AS(cdd(xs, std::vector<int>(9, 0), xt, std::vector<int>(9, 0), 1, spec), ConfigError);
}

TEST_CASE("confident labels") {
  Matrix p(3, 3);
  p << 0.9, 0.05, 0.05, 0.4, 0.35, 0.25, 0.1, 0.1, 0.8;
  CHECK(confident_labels(p, 0.8) == std::vector<int>{0, -1, 2});
}

TEST_CASE("loss_disc closed forms") {
  ad::Tape t;
  CHECK(loss_disc(t.constant(Matrix::Constant(1, 1, 0.5)), t.constant(Matrix::Constant(1, 1, 0.5))).scalar() ==
        doctest::Approx(2.0 * std::log(2.0)));
  const double perfect = loss_disc(t.constant(Matrix::Constant(4, 1, 1.0 - 1e-12)),
                                   t.constant(Matrix::Constant(4, 1, 1e-12)))
                             .scalar();
  CHECK(std::abs(perfect) < 1e-10);
  Matrix ps(2, 1), pt(2, 1);
  ps << 0.9, 0.6;
  pt << 0.2, 0.7;
  CHECK(loss_disc(t.constant(ps), t.constant(pt)).scalar() == doctest::Approx(2.043302495063963).epsilon(1e-13));
}

TEST_CASE("loss_pair closed forms and frozen reference") {
  ad::Tape t;
  const model::PairTargets all{Matrix::Zero(3, 3), Matrix::Ones(3, 3)};
  CHECK(loss_pair(t.constant(Matrix::Constant(3, 3, 0.5)), all).scalar() == doctest::Approx(std::log(2.0)));
  const model::PairTargets pos{Matrix::Ones(3, 3), Matrix::Ones(3, 3)};
  CHECK(std::abs(loss_pair(t.constant(Matrix::Constant(3, 3, 1.0 - 1e-12)), pos).scalar()) < 1e-10);

  Matrix p(3, 3);
  p << 0.9, 0.05, 0.05, 0.8, 0.1, 0.1, 0.1, 0.2, 0.7;
  const Matrix phi = model::similarity(p);
  CHECK(phi(0, 1) == doctest::Approx(0.73));
  const auto targets = model::pseudo_label(phi, 0.7, 0.2);
  CHECK(loss_pair(t.constant(phi), targets).scalar() == doctest::Approx(0.2809334376988511).epsilon(1e-13));
}

TEST_CASE("loss_pair equals a direct double loop") {
  Rng rng(6);
  const Matrix phi = model::similarity(random_probs(rng, 4, 3));
  const auto targets = model::pseudo_label(phi, 0.6, 0.3);
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (targets.mask(i, j) == 0.0) continue;
      const double mu = targets.mu(i, j);
      s += -mu * std::log(phi(i, j)) - (1.0 - mu) * std::log(1.0 - phi(i, j));
    }
  ad::Tape t;
  CHECK(std::abs(loss_pair(t.constant(phi), targets).scalar() - s / 16.0) < 1e-12);
  CHECK_THROWS_AS(loss_pair(t.constant(phi), model::PairTargets{Matrix::Zero(3, 3), Matrix::Zero(3, 3)}),
                  DimensionError);
}

TEST_CASE("classifier discrepancy") {
  ad::Tape t;
  Matrix a(1, 3), b(1, 3);
  a << 1, 0, 0;
  b << 0, 1, 0;
  CHECK(classifier_discrepancy(t.constant(a), t.constant(b)).scalar() == doctest::Approx(2.0 / 3.0));
  CHECK(classifier_discrepancy(t.constant(a), t.constant(a)).scalar() == 0.0);
  Matrix pa(2, 3), pr(2, 3);
  pa << 0.6, 0.3, 0.1, 0.2, 0.2, 0.6;
  pr << 0.5, 0.4, 0.1, 0.3, 0.1, 0.6;
  CHECK(classifier_discrepancy(t.constant(pa), t.constant(pr)).scalar() ==
        doctest::Approx(0.06666666666666667).epsilon(1e-13));
  CHECK_THROWS_AS(classifier_discrepancy(t.constant(pa), t.constant(a)), DimensionError);
}

TEST_CASE("cross entropy") {
  ad::Tape t;
  Matrix p(2, 3);
  p << 0.6, 0.3, 0.1, 0.2, 0.2, 0.6;
  CHECK(cross_entropy(t.constant(p), std::vector<int>{0, 2}).scalar() ==
        doctest::Approx(0.5108256237659907).epsilon(1e-13));
  CHECK_THROWS_AS(cross_entropy(t.constant(p), std::vector<int>{0, 3}), DataError);
}

TEST_CASE("composite objectives are the stated weighted sums") {
  ad::Tape t;
  DomainParts parts{t.scalar_constant(1.5), t.scalar_constant(0.7), t.scalar_constant(2.0), t.scalar_constant(0.3)};
  const LossWeights w{0.5, 0.25, 2.0};
  CHECK(composite_lmmdpl(parts, w, Adversary::kPlain).scalar() == doctest::Approx(1.5 + 0.35 - 0.5 + 0.6));
  CHECK(composite_cddpl(parts, w, Adversary::kReversed).scalar() == doctest::Approx(1.5 + 0.35 + 2.0 + 0.6));
  CHECK(composite_lmmdpl(parts, LossWeights{0, 0, 0}, Adversary::kPlain).scalar() == doctest::Approx(1.5));
  DomainParts zero{t.scalar_constant(0), t.scalar_constant(0), t.scalar_constant(0), t.scalar_constant(0)};
  CHECK(composite_lmmdpl(zero, w, Adversary::kPlain).scalar() == 0.0);
  CHECK_THROWS_AS(LossWeights({1, 1, -1}).validate(), ConfigError);
}

TEST_CASE("mcd stage losses") {
  ad::Tape t;
  McdParts p{t.scalar_constant(1.0), t.scalar_constant(0.4), t.scalar_constant(0.6), t.scalar_constant(2.0),
             t.scalar_constant(0.3)};
  const LossWeights w{0.5, 0.25, 2.0};
  CHECK(mcd_losses(1, p, w, Adversary::kPlain).scalar() == doctest::Approx(1.0 + 0.2 + 0.15 + 4.0));
  CHECK(mcd_losses(1, p, w, Adversary::kReversed).scalar() == doctest::Approx(1.0 + 0.2 + 0.15 + 2.0));
  CHECK(mcd_losses(2, p, w, Adversary::kPlain).scalar() == doctest::Approx(0.7));
  CHECK(mcd_losses(3, p, w, Adversary::kPlain).scalar() == doctest::Approx(3.0));
  McdParts same = p;
  same.discrepancy = t.scalar_constant(0.0);
  CHECK(mcd_losses(2, same, w, Adversary::kPlain).scalar() == doctest::Approx(1.0));
  McdParts negative = p;
  negative.discrepancy = t.scalar_constant(5.0);
  CHECK(mcd_losses(2, negative, w, Adversary::kPlain).scalar() == 0.0);
  McdParts perfect{t.scalar_constant(1e-13), {}, {}, t.scalar_constant(1e-13), {}};
  CHECK(mcd_losses(3, perfect, w, Adversary::kPlain).scalar() < 1e-12);
  CHECK_THROWS_AS(mcd_losses(4, p, w, Adversary::kPlain), ContractError);
  CHECK(reversal_coefficient_mcd(1, w) == 2.0);
  CHECK(reversal_coefficient_mcd(3, w) == 1.0);
  CHECK(reversal_coefficient_domain(w) == 0.25);
}

TEST_CASE("default gamma per method") {
  CHECK(training::default_gamma(training::Method::kLmmdpl) == 0.5);
  CHECK(training::default_gamma(training::Method::kCddpl) == 1.0);
}

TEST_CASE("loss gradients match finite differences on small batches") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    ad::ParamStore store;
    store.add("fs", random_matrix(rng, 6, 3));
    store.add("ft", random_matrix(rng, 6, 3));
    store.add("theta", 0.5 * random_matrix(rng, 3, 3));
    const Matrix psi = random_matrix(rng, 3, 3);
    const auto ls = random_labels(rng, 6, 3);
    const auto lt = random_labels(rng, 6, 3);
    const Matrix pt = random_probs(rng, 6, 3);
    const model::PairTargets pairs = model::label_pairs(ls);
    const auto kernel = resolve_kernel(KernelSpec::median_rbf(), store.value("fs"), store.value("ft"));

    int which = 0;
    auto check = [&](const ad::LossBuilder& f) {
      CAPTURE(seed);
      CAPTURE(which);
      ++which;
      CHECK(ad::finite_diff_check(f, store).max_rel_error < 1e-4);
    };
    check([&](ad::Tape& t, const ad::ParamStore& p) {
      const auto probs = model::class_probs(model::interaction(t.param(p, "fs"), t.param(p, "theta"), psi));
      return loss_pair(model::similarity(probs), pairs);
    });
    check([&](ad::Tape& t, const ad::ParamStore& p) {
      return mmd(t.param(p, "fs"), t.param(p, "ft"), kernel);
    });
    check([&](ad::Tape& t, const ad::ParamStore& p) {
      return lmmd(t.param(p, "fs"), ls, t.param(p, "ft"), pt, kernel);
    });
    check([&](ad::Tape& t, const ad::ParamStore& p) {
      return cdd(t.param(p, "fs"), ls, t.param(p, "ft"), lt, 3, kernel);
    });
    check([&](ad::Tape& t, const ad::ParamStore& p) {
      const auto a = ad::softmax_rows(t.param(p, "fs"));
      const auto b = ad::softmax_rows(t.param(p, "ft"));
      return classifier_discrepancy(a, b);
    });
    check([&](ad::Tape& t, const ad::ParamStore& p) {
      const auto ps = ad::sigmoid(ad::matmul(t.param(p, "fs"), t.constant(Matrix::Ones(3, 1))));
      const auto q = ad::sigmoid(ad::matmul(t.param(p, "ft"), t.constant(Matrix::Ones(3, 1))));
      return loss_disc(ps, q);
    });
  }
}

TEST_CASE("in-graph median bandwidth: same values, exact gradients, scale invariance") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CAPTURE(seed);
    Rng rng(100 + seed);
    ad::ParamStore store;
    store.add("fs", random_matrix(rng, 5, 3));
    store.add("ft", random_matrix(rng, 6, 3));
    const auto ls = random_labels(rng, 5, 3);
    const auto lt = random_labels(rng, 6, 3);
    const Matrix pt = random_probs(rng, 6, 3);
    const KernelSpec spec = KernelSpec::median_rbf();

    ad::Tape tape;
    const auto fs = tape.constant(store.value("fs"));
    const auto ft = tape.constant(store.value("ft"));
    const double tracked = lmmd(fs, ls, ft, pt, resolve_kernel(spec, fs, ft)).scalar();
    CHECK(tracked == doctest::Approx(lmmd(store.value("fs"), ls, store.value("ft"), pt, spec)).epsilon(1e-13));
    const double scaled = lmmd(Matrix(3.0 * store.value("fs")), ls, Matrix(3.0 * store.value("ft")), pt, spec);
    CHECK(scaled == doctest::Approx(tracked).epsilon(1e-12));

    CHECK(ad::finite_diff_check(
              [&](ad::Tape& t, const ad::ParamStore& p) {
                const auto a = t.param(p, "fs");
                const auto b = t.param(p, "ft");
                return mmd(a, b, resolve_kernel(spec, a, b));
              },
              store)
              .max_rel_error < 1e-4);
    CHECK(ad::finite_diff_check(
              [&](ad::Tape& t, const ad::ParamStore& p) {
                const auto a = t.param(p, "fs");
                const auto b = t.param(p, "ft");
                return lmmd(a, ls, b, pt, resolve_kernel(spec, a, b));
              },
              store)
              .max_rel_error < 1e-4);
    CHECK(ad::finite_diff_check(
              [&](ad::Tape& t, const ad::ParamStore& p) {
                const auto a = t.param(p, "fs");
                const auto b = t.param(p, "ft");
                return cdd(a, ls, b, lt, 3, resolve_kernel(spec, a, b));
              },
              store)
              .max_rel_error < 1e-4);
  }
}

TEST_CASE("in-graph median bandwidth: a global rescale carries no gradient") {
  Rng rng(7);
  const Matrix a = random_matrix(rng, 5, 3);
  const Matrix b = random_matrix(rng, 4, 3);
  ad::Tape tape;
  ad::ParamStore store;
  store.add("a", a);
  store.add("b", b);
  const auto ta = tape.param(store, "a");
  const auto tb = tape.param(store, "b");
  const auto loss = mmd(ta, tb, resolve_kernel(KernelSpec::median_rbf(), ta, tb));
  const auto grads = tape.backward(loss);
  // d/ds mmd(s a, s b) at s = 1 is <grad, x> summed over both inputs.
  const double radial = grads.at("a").cwiseProduct(a).sum() + grads.at("b").cwiseProduct(b).sum();
  CHECK(std::abs(radial) < 1e-12);
}
