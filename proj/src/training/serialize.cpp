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

#include "xcorpus/training/serialize.hpp"

#include <set>

#include "xcorpus/core/errors.hpp"

namespace xcorpus::training {

namespace {

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& section) {
  if (!j.is_object()) throw ConfigError("section '" + section + "' must be an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ConfigError("unknown key '" + section + "." + key + "'");
}

template <typename T>
void read(const Json& j, const char* key, T& out, const std::string& section) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("bad value for '" + section + "." + key + "'");
  }
}

std::string_view family_name(losses::KernelFamily f) {
  return f == losses::KernelFamily::kLinear ? "linear" : "rbf";
}
std::string_view mode_name(losses::BandwidthMode m) {
  return m == losses::BandwidthMode::kFixed ? "fixed" : "median";
}

}  // namespace

Json architecture_to_json(const model::Architecture& a) {
  return Json{{"hidden1", a.hidden1},           {"hidden2", a.hidden2},
              {"latent", a.latent},             {"disc_hidden1", a.disc_hidden1},
              {"disc_hidden2", a.disc_hidden2}, {"classes", a.classes},
              {"dropout", a.dropout}};
}

model::Architecture architecture_from_json(const Json& j, model::Architecture a) {
  const std::string s = "model";
  reject_unknown(j, {"hidden1", "hidden2", "latent", "disc_hidden1", "disc_hidden2", "classes", "dropout"}, s);
  read(j, "hidden1", a.hidden1, s);
  read(j, "hidden2", a.hidden2, s);
  read(j, "latent", a.latent, s);
  read(j, "disc_hidden1", a.disc_hidden1, s);
  read(j, "disc_hidden2", a.disc_hidden2, s);
  read(j, "classes", a.classes, s);
  read(j, "dropout", a.dropout, s);
  if (a.hidden1 < 1 || a.hidden2 < 1 || a.latent < 1 || a.disc_hidden1 < 1 || a.disc_hidden2 < 1)
    throw ConfigError("model widths must be >= 1");
  return a;
}

Json train_to_json(const TrainConfig& c) {
  Json ablation = Json::object();
  const bool flags[] = {c.ablation.no_target_pairwise, c.ablation.no_all_pairwise, c.ablation.no_prototypes,
                        c.ablation.identity_theta,     c.ablation.no_discriminator, c.ablation.single_classifier,
                        c.ablation.skip_step2,         c.ablation.skip_step3};
  for (std::size_t k = 0; k < kAblationNames.size(); ++k) ablation[kAblationNames[k]] = flags[k];
  ablation["gamma_value"] = c.ablation.gamma_value ? Json(*c.ablation.gamma_value) : Json(nullptr);
  return Json{{"method", method_name(c.method)},
              {"learning_rate", c.learning_rate},
              {"epochs", c.epochs},
              {"batch_size", c.batch_size},
              {"alpha", c.alpha},
              {"beta", c.beta},
              {"gamma", c.effective_gamma()},
              {"M", c.inner_steps},
              {"upper", c.upper},
              {"lower", c.lower},
              {"kernel",
               {{"family", family_name(c.kernel.family)},
                {"mode", mode_name(c.kernel.mode)},
                {"bandwidths", c.kernel.bandwidths}}},
              {"l2_weight", c.l2_weight},
              {"seed", c.seed},
              {"prototype_momentum", c.prototype_momentum},
              {"disc_reduction", c.disc_reduction == DiscReduction::kSum ? "sum" : "mean"},
              {"stage3_discrepancy", c.stage3_discrepancy},
              {"checkpoint_every", c.checkpoint_every},
              {"ablation", ablation}};
}

TrainConfig train_from_json(const Json& j, TrainConfig c) {
  const std::string s = "train";
  reject_unknown(j,
                 {"method", "learning_rate", "epochs", "batch_size", "alpha", "beta", "gamma", "M", "upper",
                  "lower", "kernel", "l2_weight", "seed", "prototype_momentum", "disc_reduction",
                  "stage3_discrepancy", "checkpoint_every", "ablation"},
                 s);
  if (j.contains("method")) {
    std::string m;
    read(j, "method", m, s);
    c.method = parse_method(m);
  }
  read(j, "learning_rate", c.learning_rate, s);
  read(j, "epochs", c.epochs, s);
  read(j, "batch_size", c.batch_size, s);
  read(j, "alpha", c.alpha, s);
  read(j, "beta", c.beta, s);
  if (j.contains("gamma")) {
    if (j.at("gamma").is_null()) {
      c.gamma.reset();
    } else {
      double g = 0.0;
      read(j, "gamma", g, s);
      c.gamma = g;
    }
  }
  read(j, "M", c.inner_steps, s);
  read(j, "upper", c.upper, s);
  read(j, "lower", c.lower, s);
  if (j.contains("kernel")) {
    const Json& k = j.at("kernel");
    reject_unknown(k, {"family", "mode", "bandwidths"}, "train.kernel");
    std::string family = std::string(family_name(c.kernel.family));
    std::string mode = std::string(mode_name(c.kernel.mode));
    read(k, "family", family, "train.kernel");
    read(k, "mode", mode, "train.kernel");
    read(k, "bandwidths", c.kernel.bandwidths, "train.kernel");
    if (family == "rbf") c.kernel.family = losses::KernelFamily::kGaussianRbf;
    else if (family == "linear") c.kernel.family = losses::KernelFamily::kLinear;
    else throw ConfigError("train.kernel.family must be 'rbf' or 'linear'");
    if (mode == "median") c.kernel.mode = losses::BandwidthMode::kMedianHeuristic;
    else if (mode == "fixed") c.kernel.mode = losses::BandwidthMode::kFixed;
    else throw ConfigError("train.kernel.mode must be 'median' or 'fixed'");
  }
  read(j, "l2_weight", c.l2_weight, s);
  read(j, "seed", c.seed, s);
  read(j, "prototype_momentum", c.prototype_momentum, s);
  if (j.contains("disc_reduction")) {
    std::string r;
    read(j, "disc_reduction", r, s);
    if (r == "sum") c.disc_reduction = DiscReduction::kSum;
    else if (r == "mean") c.disc_reduction = DiscReduction::kMean;
    else throw ConfigError("train.disc_reduction must be 'sum' or 'mean'");
  }
  read(j, "stage3_discrepancy", c.stage3_discrepancy, s);
  read(j, "checkpoint_every", c.checkpoint_every, s);
  if (j.contains("ablation")) {
    const Json& a = j.at("ablation");
    std::set<std::string> allowed(kAblationNames.begin(), kAblationNames.end());
    allowed.insert("gamma_value");
    reject_unknown(a, allowed, "train.ablation");
    bool* flags[] = {&c.ablation.no_target_pairwise, &c.ablation.no_all_pairwise, &c.ablation.no_prototypes,
                     &c.ablation.identity_theta,     &c.ablation.no_discriminator, &c.ablation.single_classifier,
                     &c.ablation.skip_step2,         &c.ablation.skip_step3};
    for (std::size_t k = 0; k < kAblationNames.size(); ++k)
      read(a, kAblationNames[k].c_str(), *flags[k], "train.ablation");
    if (a.contains("gamma_value")) {
      if (a.at("gamma_value").is_null()) {
        c.ablation.gamma_value.reset();
      } else {
        double g = 0.0;
        read(a, "gamma_value", g, "train.ablation");
        c.ablation.gamma_value = g;
      }
    }
  }
  return c;
}

std::string config_fingerprint(const TrainConfig& cfg) {
  return Json{{"model", architecture_to_json(cfg.arch)}, {"train", train_to_json(cfg)}}.dump();
}

}  // namespace xcorpus::training
