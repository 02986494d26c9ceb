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

#include "xcorpus/training/trainer.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <algorithm>
#include <numeric>
#include <sstream>

#include "xcorpus/autodiff/ops.hpp"
#include "xcorpus/autodiff/optim.hpp"
#include "xcorpus/core/binary_io.hpp"
#include "xcorpus/core/errors.hpp"
#include "xcorpus/core/rng.hpp"
#include "xcorpus/losses/discrepancy.hpp"
#include "xcorpus/losses/objectives.hpp"
#include "xcorpus/model/checkpoint.hpp"
#include "xcorpus/model/network.hpp"
#include "xcorpus/model/pairwise.hpp"
#include "xcorpus/training/serialize.hpp"

namespace xcorpus::training {

namespace {

using ad::Tensor;
using model::kClassifierAda;
using model::kClassifierRms;
using model::kDiscriminator;
using model::kExtractor;
using model::kPointwiseHead;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const std::string kFreePsi = "psi";

std::string rng_state(const Rng& rng) {
  std::ostringstream os;
  os << rng;
  return os.str();
}

void restore_rng(Rng& rng, const std::string& state) {
  std::istringstream is(state);
  is >> rng;
  if (!is) throw DataError("checkpoint: corrupt rng state");
}

// Shuffled index stream that reshuffles whenever it runs out, so the shorter domain cycles.
class Stream {
 public:
  Stream() = default;
  Stream(std::size_t n, Rng rng) : order_(n), rng_(std::move(rng)) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    shuffle(order_.begin(), order_.end(), rng_);
  }

  std::vector<std::size_t> next(std::size_t count) {
    std::vector<std::size_t> out;
    out.reserve(count);
    while (out.size() < count) {
      if (pos_ == order_.size()) {
        shuffle(order_.begin(), order_.end(), rng_);
        pos_ = 0;
      }
      out.push_back(order_[pos_++]);
    }
    return out;
  }

  void write(io::ByteWriter& w) const {
    w.put<std::uint64_t>(order_.size());
    for (auto i : order_) w.put<std::uint64_t>(i);
    w.put<std::uint64_t>(pos_);
    w.str(rng_state(rng_));
  }

  void read(io::ByteReader& r, std::size_t expected_n) {
    const auto n = r.checked_count(r.get<std::uint64_t>(), sizeof(std::uint64_t));
    if (n != expected_n) throw DataError("checkpoint: dataset size differs from the checkpointed run");
    order_.resize(n);
    for (auto& i : order_) {
      i = r.get<std::uint64_t>();
      if (i >= n) throw DataError("checkpoint: corrupt batch order");
    }
    pos_ = r.get<std::uint64_t>();
    if (pos_ > n) throw DataError("checkpoint: corrupt batch position");
    restore_rng(rng_, r.str());
  }

 private:
  std::vector<std::size_t> order_;
  std::size_t pos_ = 0;
  Rng rng_;
};

Matrix gather_rows(const Matrix& x, const std::vector<std::size_t>& rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t k = 0; k < rows.size(); ++k)
    out.row(static_cast<Eigen::Index>(k)) = x.row(static_cast<Eigen::Index>(rows[k]));
  return out;
}

Labels gather_labels(const Labels& y, const std::vector<std::size_t>& rows) {
  Labels out;
  out.reserve(rows.size());
  for (auto i : rows) out.push_back(y[i]);
  return out;
}

// Without prototypes the pairwise objectives never tie an anchor row to a label, so each
// classifier's rows are permuted to agree best with the source labels after training.
TrainedModel with_aligned_anchors(TrainedModel m, const Matrix& xs, const Labels& ys);

double value_or_zero(const Tensor& t) { return t.defined() ? t.scalar() : 0.0; }

std::vector<std::string> history_columns(const TrainConfig& cfg) {
  if (cfg.method == Method::kMcdpl)
    return {"epoch",       "s1_total",      "s1_pair_s", "s1_pair_t_ada", "s1_pair_t_rms",
            "s1_disc",     "s2_total",      "s2_pair_t_ada", "s2_pair_t_rms", "s2_diff",
            "s3_total",    "s3_pair_s",     "s3_disc",   "target_acc"};
  if (cfg.method == Method::kPointwise) return {"epoch", "total", "ce", "disc", "target_acc"};
  return {"epoch", "total", "pair_s", "pair_t", "disc", "align", "target_acc"};
}

class Run {
 public:
  Run(const data::CorpusDataset& source, const data::UnlabeledView& target, const TrainConfig& cfg,
      const TrainOptions& options)
      : cfg_(cfg), opts_(options), xs_(source.features), ys_(source.labels), xt_(target.features()) {
    cfg_.validate();
    source.validate();
    if (xt_.cols() != kFeatureWidth) throw WidthError("target features must have 310 columns");
    if (source.size() == 0 || target.size() == 0) throw DataError("training needs non-empty source and target");
    cfg_.arch.input = kFeatureWidth;
    for (int l : ys_)
      if (l < 0 || l >= cfg_.arch.classes)
        throw ConfigError("source label " + std::to_string(l) + " outside the configured " +
                          std::to_string(cfg_.arch.classes) + " classes");
    if (opts_.monitor_labels && opts_.monitor_labels->size() != target.size())
      throw DataError("monitor labels must match the target size");

    model_.config = cfg_;
    model_.prototypes = model::PrototypeBank(cfg_.arch.classes, cfg_.arch.latent, cfg_.prototype_momentum);
    init_params();
    src_ = Stream(xs_.rows(), make_rng(cfg_.seed, "batches-source"));
    tgt_ = Stream(xt_.rows(), make_rng(cfg_.seed, "batches-target"));
    dropout_rng_ = make_rng(cfg_.seed, "dropout");
    history_.columns = history_columns(cfg_);
    if (opts_.resume_from) resume(*opts_.resume_from);
  }

  TrainResult run() {
    const int last = opts_.stop_after_epoch ? std::min(cfg_.epochs, *opts_.stop_after_epoch) : cfg_.epochs;
    const auto n_long = std::max(xs_.rows(), xt_.rows());
    const int batches = static_cast<int>((n_long + cfg_.batch_size - 1) / cfg_.batch_size);
    const auto bs = static_cast<std::size_t>(std::min<Eigen::Index>(cfg_.batch_size, xs_.rows()));
    const auto bt = static_cast<std::size_t>(std::min<Eigen::Index>(cfg_.batch_size, xt_.rows()));
    while (epoch_ < last) {
      sums_.assign(history_.columns.size(), 0.0);
      for (int b = 0; b < batches; ++b) {
        batch_ = b;
        const auto si = src_.next(bs);
        const auto ti = tgt_.next(bt);
        const Matrix xs = gather_rows(xs_, si);
        const Labels ys = gather_labels(ys_, si);
        const Matrix xt = gather_rows(xt_, ti);
        if (cfg_.method == Method::kMcdpl) {
          mcd_batch(xs, ys, xt);
        } else if (cfg_.method == Method::kPointwise) {
          pointwise_batch(xs, ys, xt);
        } else {
          domain_batch(xs, ys, xt);
        }
      }
      ++epoch_;
      std::vector<double> row(history_.columns.size());
      row[0] = epoch_;
      for (std::size_t c = 1; c + 1 < row.size(); ++c) row[c] = sums_[c] / batches;
      row.back() = monitor();
      history_.rows.push_back(std::move(row));
      if (opts_.checkpoint_path && cfg_.checkpoint_every > 0 && epoch_ % cfg_.checkpoint_every == 0)
        write_checkpoint(*opts_.checkpoint_path);
    }
    model_.params.unfreeze_all();
    return {with_aligned_anchors(model_, xs_, ys_), history_, counters_, epoch_};
  }

 private:
  bool has_discriminator() const {
    return cfg_.method != Method::kSourceOnly && !cfg_.ablation.no_discriminator;
  }

  void init_params() {
    auto& store = model_.params;
    Rng rng = make_rng(cfg_.seed, "init");
    model::init_extractor(store, cfg_.arch, rng);
    if (has_discriminator()) model::init_discriminator(store, cfg_.arch, rng);
    if (cfg_.method == Method::kPointwise) {
      model::init_pointwise_head(store, cfg_.arch, rng);
      return;
    }
    Rng rms = make_rng(cfg_.seed, "init-classifier-rms");
    init_head(store, kClassifierRms, rms);
    if (cfg_.two_classifiers()) {
      Rng ada = make_rng(cfg_.seed, "init-classifier-ada");
      init_head(store, kClassifierAda, ada);
    }
  }

  void init_head(ad::ParamStore& store, const std::string& prefix, Rng& rng) const {
    if (!cfg_.ablation.identity_theta) model::init_classifier(store, prefix, cfg_.arch, rng);
    if (cfg_.ablation.no_prototypes) {
      const double bound = 1.0 / std::sqrt(static_cast<double>(cfg_.arch.latent));
      Matrix psi(cfg_.arch.classes, cfg_.arch.latent);
      for (Eigen::Index j = 0; j < psi.cols(); ++j)
        for (Eigen::Index i = 0; i < psi.rows(); ++i) psi(i, j) = (2.0 * uniform01(rng) - 1.0) * bound;
      store.add(prefix + kFreePsi, psi);
    }
  }

  // Γ for one classifier on the given features.
  Tensor gamma(ad::Tape& tape, const Tensor& f, const std::string& prefix) const {
    const Tensor theta = cfg_.ablation.identity_theta
                             ? tape.constant(Matrix::Identity(cfg_.arch.latent, cfg_.arch.latent))
                             : tape.param(model_.params, prefix + "theta");
    if (cfg_.ablation.no_prototypes) return model::interaction(f, theta, tape.param(model_.params, prefix + kFreePsi));
    return model::interaction(f, theta, model_.prototypes.psi());
  }

  Tensor source_term(const Tensor& probs, const Labels& ys) const {
    if (cfg_.ablation.no_all_pairwise) return losses::cross_entropy(probs, ys);
    return losses::loss_pair(model::similarity(probs), model::label_pairs(ys));
  }

  Tensor target_pair(const Tensor& probs) const {
    const Tensor phi = model::similarity(probs);
    return losses::loss_pair(phi, model::pseudo_label(phi.value(), cfg_.upper, cfg_.lower));
  }

  bool target_pairwise_enabled() const {
    return !cfg_.ablation.no_target_pairwise && !cfg_.ablation.no_all_pairwise;
  }

  Tensor disc_loss(ad::Tape&, const Tensor& fs, const Tensor& ft, double coeff) {
    const Tensor ps = model::discriminate(ft.tape(), model_.params, ad::grad_reverse(fs, coeff), cfg_.arch,
                                          ad::Mode::kTrain, dropout_rng_);
    const Tensor pt = model::discriminate(ft.tape(), model_.params, ad::grad_reverse(ft, coeff), cfg_.arch,
                                          ad::Mode::kTrain, dropout_rng_);
    Tensor l = losses::loss_disc(ps, pt);
    if (cfg_.disc_reduction == DiscReduction::kMean)
      l = ad::scale(l, 1.0 / static_cast<double>(fs.rows() + ft.rows()));
    return l;
  }

  void update_prototypes(const Matrix& fs, const Labels& ys) {
    if (!cfg_.ablation.no_prototypes) model_.prototypes.update(fs, ys);
  }

  void apply(const ad::Gradients& grads) {
    const auto hyper = cfg_.hyper();
    for (const auto& [name, g] : grads) {
      auto& p = model_.params.at(name);
      if (p.frozen) continue;
      if (name.rfind(kClassifierAda, 0) == 0) {
        ad::adam_update(p, g, hyper);
      } else {
        ad::rmsprop_update(p, g, hyper);
      }
    }
  }

  void begin(int stage) {
    if (opts_.observer.on_stage_begin)
      opts_.observer.on_stage_begin({epoch_, batch_, stage, 0, &model_.params});
  }
  void end(int stage, int inner) {
    if (opts_.observer.on_stage_end) opts_.observer.on_stage_end({epoch_, batch_, stage, inner, &model_.params});
  }

  void add(std::size_t column, double v) { sums_[column] += v; }

  void domain_batch(const Matrix& xs, const Labels& ys, const Matrix& xt) {
    begin(0);
    ad::Tape tape;
    const Tensor fs = model::extract_features(tape, model_.params, tape.constant(xs), cfg_.arch);
    const Tensor ft = model::extract_features(tape, model_.params, tape.constant(xt), cfg_.arch);
    update_prototypes(fs.value(), ys);
    const Tensor ps = model::class_probs(gamma(tape, fs, kClassifierRms));
    const Tensor pt = model::class_probs(gamma(tape, ft, kClassifierRms));

    losses::DomainParts parts;
    parts.pair_source = source_term(ps, ys);
    if (cfg_.method != Method::kSourceOnly) {
      if (target_pairwise_enabled()) parts.pair_target = target_pair(pt);
      if (has_discriminator())
        parts.disc = disc_loss(tape, fs, ft, losses::reversal_coefficient_domain(cfg_.weights()));
      if (cfg_.method == Method::kLmmdpl || cfg_.method == Method::kCddpl) {
        const auto kernel = losses::resolve_kernel(cfg_.kernel, fs, ft);
        if (cfg_.method == Method::kLmmdpl) {
          parts.align = losses::lmmd(fs, ys, ft, pt.value(), kernel);
        } else {
          const auto hard = losses::confident_labels(pt.value(), cfg_.upper);
          parts.align = losses::cdd(fs, ys, ft, hard, cfg_.arch.classes, kernel);
        }
      }
    }
    const Tensor total = cfg_.method == Method::kCddpl
                             ? losses::composite_cddpl(parts, cfg_.weights(), losses::Adversary::kReversed)
                             : losses::composite_lmmdpl(parts, cfg_.weights(), losses::Adversary::kReversed);
    apply(tape.backward(total));
    ++counters_.stage1;
    add(1, total.scalar());
    add(2, value_or_zero(parts.pair_source));
    add(3, value_or_zero(parts.pair_target));
    add(4, value_or_zero(parts.disc));
    add(5, value_or_zero(parts.align));
    end(0, 1);
  }

  void pointwise_batch(const Matrix& xs, const Labels& ys, const Matrix& xt) {
    begin(0);
    ad::Tape tape;
    const Tensor fs = model::extract_features(tape, model_.params, tape.constant(xs), cfg_.arch);
    const Tensor probs = ad::softmax_rows(model::pointwise_logits(tape, model_.params, fs));
    const Tensor ce = losses::cross_entropy(probs, ys);
    Tensor total = ce;
    Tensor disc;
    if (has_discriminator()) {
      const Tensor ft = model::extract_features(tape, model_.params, tape.constant(xt), cfg_.arch);
      disc = disc_loss(tape, fs, ft, cfg_.beta);
      total = ad::add(total, disc);
    }
    apply(tape.backward(total));
    ++counters_.stage1;
    add(1, total.scalar());
    add(2, ce.scalar());
    add(3, value_or_zero(disc));
    end(0, 1);
  }

  // Mean of the source pair losses of the active classifiers.
  Tensor mcd_source(const Tensor& fs, const Labels& ys, ad::Tape& tape) const {
    const Tensor rms = source_term(model::class_probs(gamma(tape, fs, kClassifierRms)), ys);
    if (!cfg_.two_classifiers()) return rms;
    const Tensor ada = source_term(model::class_probs(gamma(tape, fs, kClassifierAda)), ys);
    return ad::scale(ad::add(rms, ada), 0.5);
  }

  void mcd_batch(const Matrix& xs, const Labels& ys, const Matrix& xt) {
    const auto w = cfg_.weights();
    const bool two = cfg_.two_classifiers();

    // Stage 1: all modules on L1.
    begin(1);
    {
      ad::Tape tape;
      const Tensor fs = model::extract_features(tape, model_.params, tape.constant(xs), cfg_.arch);
      const Tensor ft = model::extract_features(tape, model_.params, tape.constant(xt), cfg_.arch);
      update_prototypes(fs.value(), ys);
      losses::McdParts parts;
      parts.pair_source = mcd_source(fs, ys, tape);
      if (target_pairwise_enabled()) {
        parts.pair_target_rms = target_pair(model::class_probs(gamma(tape, ft, kClassifierRms)));
        if (two) parts.pair_target_ada = target_pair(model::class_probs(gamma(tape, ft, kClassifierAda)));
      }
      if (has_discriminator()) parts.disc = disc_loss(tape, fs, ft, losses::reversal_coefficient_mcd(1, w));
      const Tensor total = losses::mcd_losses(1, parts, w, losses::Adversary::kReversed);
      apply(tape.backward(total));
      add(1, total.scalar());
      add(2, value_or_zero(parts.pair_source));
      add(3, value_or_zero(parts.pair_target_ada));
      add(4, value_or_zero(parts.pair_target_rms));
      add(5, value_or_zero(parts.disc));
    }
    ++counters_.stage1;
    end(1, 1);

    // Stage 2: extractor and discriminator locked, classifiers pushed apart on the target.
    if (two && !cfg_.ablation.skip_step2) {
      begin(2);
      model_.params.freeze(kExtractor);
      model_.params.freeze(kDiscriminator);
      {
        ad::Tape tape;
        const Tensor ft = model::extract_features(tape, model_.params, tape.constant(xt), cfg_.arch);
        const Tensor p_ada = model::class_probs(gamma(tape, ft, kClassifierAda));
        const Tensor p_rms = model::class_probs(gamma(tape, ft, kClassifierRms));
        losses::McdParts parts;
        parts.pair_target_ada = target_pair(p_ada);
        parts.pair_target_rms = target_pair(p_rms);
        parts.discrepancy = losses::classifier_discrepancy(p_ada, p_rms);
        const Tensor total = losses::mcd_losses(2, parts, w, losses::Adversary::kReversed);
        apply(tape.backward(total));
        add(6, total.scalar());
        add(7, parts.pair_target_ada.scalar());
        add(8, parts.pair_target_rms.scalar());
        add(9, parts.discrepancy.scalar());
      }
      model_.params.unfreeze(kExtractor);
      model_.params.unfreeze(kDiscriminator);
      ++counters_.stage2;
      end(2, 1);
    }

    // Stage 3: classifiers locked, extractor (and discriminator) trained M times on L3.
    if (!cfg_.ablation.skip_step3) {
      begin(3);
      model_.params.freeze(kClassifierAda);
      model_.params.freeze(kClassifierRms);
      int inner = 0;
      double total_sum = 0.0, pair_sum = 0.0, disc_sum = 0.0;
      for (int m = 0; m < cfg_.inner_steps; ++m) {
        ad::Tape tape;
        const Tensor fs = model::extract_features(tape, model_.params, tape.constant(xs), cfg_.arch);
        losses::McdParts parts;
        parts.pair_source = mcd_source(fs, ys, tape);
        Tensor ft;
        if (has_discriminator() || (cfg_.stage3_discrepancy && two))
          ft = model::extract_features(tape, model_.params, tape.constant(xt), cfg_.arch);
        if (has_discriminator()) parts.disc = disc_loss(tape, fs, ft, losses::reversal_coefficient_mcd(3, w));
        Tensor total = losses::mcd_losses(3, parts, w, losses::Adversary::kReversed);
        if (cfg_.stage3_discrepancy && two) {
          const Tensor p_ada = model::class_probs(gamma(tape, ft, kClassifierAda));
          const Tensor p_rms = model::class_probs(gamma(tape, ft, kClassifierRms));
          total = ad::add(total, losses::classifier_discrepancy(p_ada, p_rms));
        }
        apply(tape.backward(total));
        ++inner;
        ++counters_.stage3_inner;
        total_sum += total.scalar();
        pair_sum += value_or_zero(parts.pair_source);
        disc_sum += value_or_zero(parts.disc);
      }
      model_.params.unfreeze(kClassifierAda);
      model_.params.unfreeze(kClassifierRms);
      ++counters_.stage3_outer;
      add(10, total_sum / inner);
      add(11, pair_sum / inner);
      add(12, disc_sum / inner);
      end(3, inner);
    }
  }

  double monitor() const {
    if (!opts_.monitor_labels) return kNaN;
    const auto pred = predict(with_aligned_anchors(model_, xs_, ys_), xt_);
    return accuracy(pred.labels, *opts_.monitor_labels);
  }

  std::string encode_state() const {
    io::ByteWriter w;
    w.put<std::int32_t>(epoch_);
    w.put<std::int64_t>(counters_.stage1);
    w.put<std::int64_t>(counters_.stage2);
    w.put<std::int64_t>(counters_.stage3_outer);
    w.put<std::int64_t>(counters_.stage3_inner);
    src_.write(w);
    tgt_.write(w);
    w.str(rng_state(dropout_rng_));
    w.put<std::uint64_t>(history_.rows.size());
    for (const auto& row : history_.rows) w.doubles(row.data(), row.size());
    return w.take();
  }

  void decode_state(const std::string& bytes) {
    io::ByteReader r(bytes, "checkpoint state");
    epoch_ = r.get<std::int32_t>();
    if (epoch_ < 0) throw DataError("checkpoint: negative epoch");
    counters_.stage1 = r.get<std::int64_t>();
    counters_.stage2 = r.get<std::int64_t>();
    counters_.stage3_outer = r.get<std::int64_t>();
    counters_.stage3_inner = r.get<std::int64_t>();
    src_.read(r, static_cast<std::size_t>(xs_.rows()));
    tgt_.read(r, static_cast<std::size_t>(xt_.rows()));
    restore_rng(dropout_rng_, r.str());
    const auto cols = history_.columns.size();
    const auto rows = r.checked_count(r.get<std::uint64_t>(), cols * sizeof(double));
    history_.rows.assign(rows, std::vector<double>(cols));
    for (auto& row : history_.rows)
      for (auto& v : row) v = r.get<double>();
    if (!r.at_end()) throw DataError("checkpoint: trailing state bytes");
  }

  static std::string resume_key(TrainConfig c) {
    c.epochs = 0;
    c.checkpoint_every = 0;
    return config_fingerprint(c);
  }

  void write_checkpoint(const std::filesystem::path& path) const {
    model::Checkpoint ckpt{config_fingerprint(cfg_), model_.params, model_.prototypes, encode_state()};
    model::save_checkpoint(ckpt, path);
  }

  void resume(const std::filesystem::path& path) {
    model::Checkpoint ckpt = model::load_checkpoint(path);
    const auto stored = Json::parse(ckpt.config);
    TrainConfig prior = train_from_json(stored.at("train"));
    prior.arch = architecture_from_json(stored.at("model"));
    if (resume_key(prior) != resume_key(cfg_))
      throw ConfigError("checkpoint " + path.string() + " was written with a different configuration");
    if (ckpt.params.names() != model_.params.names())
      throw DataError("checkpoint " + path.string() + ": parameter set differs");
    model_.params = std::move(ckpt.params);
    model_.prototypes = std::move(ckpt.prototypes);
    decode_state(ckpt.state);
  }

  TrainConfig cfg_;
  TrainOptions opts_;
  const Matrix& xs_;
  const Labels& ys_;
  const Matrix& xt_;
  TrainedModel model_;
  TrainHistory history_;
  StageCounters counters_;
  Stream src_;
  Stream tgt_;
  Rng dropout_rng_;
  int epoch_ = 0;
  int batch_ = 0;
  std::vector<double> sums_;
};

}  // namespace

int TrainedModel::classifier_count() const {
  if (config.method == Method::kPointwise) return 1;
  return config.two_classifiers() ? 2 : 1;
}

std::string TrainHistory::to_table() const {
  std::ostringstream os;
  for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "\t" : "") << columns[c];
  os << '\n' << std::setprecision(17);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << '\t';
      if (c == 0) {
        os << static_cast<long long>(row[c]);
      } else if (std::isnan(row[c])) {
        os << "nan";
      } else {
        os << row[c];
      }
    }
    os << '\n';
  }
  return os.str();
}

TrainResult train(const data::CorpusDataset& source, const data::UnlabeledView& target, const TrainConfig& cfg,
                  const TrainOptions& options) {
  return Run(source, target, cfg, options).run();
}

namespace {
TrainResult train_as(Method m, const data::CorpusDataset& source, const data::UnlabeledView& target,
                     TrainConfig cfg) {
  cfg.method = m;
  return train(source, target, cfg);
}
}  // namespace

TrainResult train_lmmdpl(const data::CorpusDataset& s, const data::UnlabeledView& t, TrainConfig cfg) {
  return train_as(Method::kLmmdpl, s, t, std::move(cfg));
}
TrainResult train_cddpl(const data::CorpusDataset& s, const data::UnlabeledView& t, TrainConfig cfg) {
  return train_as(Method::kCddpl, s, t, std::move(cfg));
}
TrainResult train_mcdpl(const data::CorpusDataset& s, const data::UnlabeledView& t, TrainConfig cfg) {
  return train_as(Method::kMcdpl, s, t, std::move(cfg));
}
TrainResult train_dannpl(const data::CorpusDataset& s, const data::UnlabeledView& t, TrainConfig cfg) {
  return train_as(Method::kDannpl, s, t, std::move(cfg));
}
TrainResult train_baseline_pointwise(const data::CorpusDataset& s, const data::UnlabeledView& t,
                                     TrainConfig cfg) {
  return train_as(Method::kPointwise, s, t, std::move(cfg));
}

namespace {

Matrix classifier_probs(const TrainedModel& m, const Matrix& features, const std::string& prefix) {
  const auto& cfg = m.config;
  const Matrix theta = cfg.ablation.identity_theta ? Matrix::Identity(cfg.arch.latent, cfg.arch.latent)
                                                   : m.params.value(prefix + "theta");
  const Matrix& psi = cfg.ablation.no_prototypes ? m.params.value(prefix + kFreePsi) : m.prototypes.psi();
  return model::class_probs(model::interaction(features, theta, psi));
}

TrainedModel with_aligned_anchors(TrainedModel m, const Matrix& xs, const Labels& ys) {
  if (!m.config.ablation.no_prototypes) return m;
  const int classes = m.config.arch.classes;
  const Matrix f = model::extract_features(m.params, xs, m.config.arch);
  std::vector<std::string> prefixes{kClassifierRms};
  if (m.config.two_classifiers()) prefixes.push_back(kClassifierAda);
  for (const auto& prefix : prefixes) {
    const Labels pred = model::argmax_rows(classifier_probs(m, f, prefix));
    std::vector<std::vector<long long>> hits(classes, std::vector<long long>(classes, 0));
    for (std::size_t i = 0; i < ys.size(); ++i) ++hits[pred[i]][ys[i]];
    std::vector<int> perm(classes), best;
    std::iota(perm.begin(), perm.end(), 0);
    long long best_hits = -1;
    do {
      long long h = 0;
      for (int k = 0; k < classes; ++k) h += hits[k][perm[k]];
      if (h > best_hits) {
        best_hits = h;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    auto& psi = m.params.at(prefix + kFreePsi).value;
    const Matrix old = psi;
    for (int k = 0; k < classes; ++k) psi.row(best[k]) = old.row(k);
  }
  return m;
}

}  // namespace

std::pair<Matrix, Matrix> predict_pair(const TrainedModel& m, const Matrix& x) {
  if (!m.config.two_classifiers()) throw ContractError("predict_pair needs a two-classifier model");
  const Matrix f = model::extract_features(m.params, x, m.config.arch);
  return {classifier_probs(m, f, kClassifierAda), classifier_probs(m, f, kClassifierRms)};
}

Prediction predict(const TrainedModel& m, const Matrix& x) {
  const Matrix f = model::extract_features(m.params, x, m.config.arch);
  Matrix probs;
  if (m.config.method == Method::kPointwise) {
    const Matrix logits = (f * m.params.value(kPointwiseHead + "W")).rowwise() +
                          m.params.value(kPointwiseHead + "b").row(0);
    probs = model::class_probs(logits);
  } else if (m.config.two_classifiers()) {
    probs = 0.5 * (classifier_probs(m, f, kClassifierAda) + classifier_probs(m, f, kClassifierRms));
  } else {
    probs = classifier_probs(m, f, kClassifierRms);
  }
  return {model::argmax_rows(probs), probs};
}

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) throw DimensionError("accuracy: length mismatch");
  if (truth.empty()) return kNaN;
  std::size_t hit = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hit += predicted[i] == truth[i];
  return static_cast<double>(hit) / static_cast<double>(truth.size());
}

void save_model(const TrainedModel& m, const std::filesystem::path& path) {
  model::save_checkpoint({config_fingerprint(m.config), m.params, m.prototypes, ""}, path);
}

TrainedModel load_model(const std::filesystem::path& path) {
  model::Checkpoint ckpt = model::load_checkpoint(path);
  TrainedModel m;
  try {
    const auto stored = Json::parse(ckpt.config);
    m.config = train_from_json(stored.at("train"));
    m.config.arch = architecture_from_json(stored.at("model"));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": unreadable configuration in checkpoint");
  }
  m.params = std::move(ckpt.params);
  m.prototypes = std::move(ckpt.prototypes);
  return m;
}

}  // namespace xcorpus::training
