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

#include "xcorpus/cli/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "xcorpus/core/errors.hpp"

namespace xcorpus::cli {

namespace {

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& section) {
  if (!j.is_object()) throw ConfigError("section '" + section + "' must be an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ConfigError("unknown key '" + (section.empty() ? key : section + "." + key) + "'");
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

}  // namespace

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void apply_override(Json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "' is not key=value");
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  Json value;
  try {
    value = Json::parse(raw);
  } catch (const nlohmann::json::parse_error&) {
    value = raw;
  }
  Json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string part = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError("override key '" + path + "' is malformed");
    if (!node->is_object()) *node = Json::object();
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    start = dot + 1;
  }
}

Json synth_to_json(const data::SynthSpec& s) {
  return Json{{"classes", s.classes},
              {"subjects", s.subjects},
              {"sessions", s.sessions},
              {"samples_per_class", s.samples_per_class},
              {"separation", s.separation},
              {"rotation_deg", s.rotation_deg},
              {"translation", s.translation},
              {"translation_alignment", s.translation_alignment},
              {"subject_shift", s.subject_shift},
              {"noise_sigma", s.noise_sigma},
              {"factor_rank", s.factor_rank},
              {"factor_sigma", s.factor_sigma},
              {"seed", s.seed}};
}

data::SynthSpec synth_from_json(const Json& j, data::SynthSpec s) {
  const std::string sec = "data.synth";
  reject_unknown(j,
                 {"classes", "subjects", "sessions", "samples_per_class", "separation", "rotation_deg",
                  "translation", "translation_alignment", "subject_shift", "noise_sigma", "factor_rank",
                  "factor_sigma", "seed"},
                 sec);
  read(j, "classes", s.classes, sec);
  read(j, "subjects", s.subjects, sec);
  read(j, "sessions", s.sessions, sec);
  read(j, "samples_per_class", s.samples_per_class, sec);
  read(j, "separation", s.separation, sec);
  read(j, "rotation_deg", s.rotation_deg, sec);
  read(j, "translation", s.translation, sec);
  read(j, "translation_alignment", s.translation_alignment, sec);
  read(j, "subject_shift", s.subject_shift, sec);
  read(j, "noise_sigma", s.noise_sigma, sec);
  read(j, "factor_rank", s.factor_rank, sec);
  read(j, "factor_sigma", s.factor_sigma, sec);
  read(j, "seed", s.seed, sec);
  return s;
}

RunConfig resolve_config(const Json& doc) {
  reject_unknown(doc, {"seed", "data", "model", "train", "eval", "output"}, "");
  RunConfig c;
  read(doc, "seed", c.seed, "seed");
  c.data.synth.seed = c.seed;
  c.train.seed = c.seed;

  if (doc.contains("output")) {
    const Json& o = doc.at("output");
    reject_unknown(o, {"dir"}, "output");
    std::string dir = c.output_dir.string();
    read(o, "dir", dir, "output");
    c.output_dir = dir;
  }

  const Json data_doc = doc.value("data", Json::object());
  reject_unknown(data_doc, {"preset", "synth", "source", "target", "format"}, "data");
  read(data_doc, "preset", c.data.preset, "data");
  if (!c.data.preset.empty()) {
    c.data.synth = data::synth_preset(c.data.preset);
    c.data.synth.seed = c.seed;
  }
  if (data_doc.contains("synth")) c.data.synth = synth_from_json(data_doc.at("synth"), c.data.synth);
  c.data.synth.validate();
  std::string source = (c.output_dir / "source.xcds").string();
  std::string target = (c.output_dir / "target.xcds").string();
  read(data_doc, "source", source, "data");
  read(data_doc, "target", target, "data");
  c.data.source = source;
  c.data.target = target;
  read(data_doc, "format", c.data.format, "data");
  if (c.data.format != "binary" && c.data.format != "csv") throw ConfigError("data.format must be binary or csv");

  if (doc.contains("model")) c.train.arch = training::architecture_from_json(doc.at("model"), c.train.arch);
  if (doc.contains("train")) c.train = training::train_from_json(doc.at("train"), c.train);
  if (c.train.arch.classes != c.data.synth.classes)
    throw ConfigError("model.classes differs from data.synth.classes");
  c.train.validate();

  if (doc.contains("eval")) {
    const Json& e = doc.at("eval");
    const std::string sec = "eval";
    reject_unknown(e, {"protocol", "seeds", "monitor", "noise_grid", "gamma_grid", "strategies", "ablations"}, sec);
    if (e.contains("protocol")) {
      std::string p;
      read(e, "protocol", p, sec);
      c.eval.protocol = eval::parse_protocol(p);
    }
    read(e, "seeds", c.eval.seeds, sec);
    read(e, "monitor", c.eval.monitor, sec);
    read(e, "noise_grid", c.eval.noise_grid, sec);
    read(e, "gamma_grid", c.eval.gamma_grid, sec);
    read(e, "strategies", c.eval.strategies, sec);
    read(e, "ablations", c.eval.ablations, sec);
  }
  if (c.eval.seeds < 1) throw ConfigError("eval.seeds must be >= 1");
  return c;
}

Json to_json(const RunConfig& c) {
  Json data{{"preset", c.data.preset},
            {"synth", synth_to_json(c.data.synth)},
            {"source", c.data.source.string()},
            {"target", c.data.target.string()},
            {"format", c.data.format}};
  Json ev{{"protocol", eval::protocol_name(c.eval.protocol)},
          {"seeds", c.eval.seeds},
          {"monitor", c.eval.monitor},
          {"noise_grid", c.eval.noise_grid},
          {"gamma_grid", c.eval.gamma_grid},
          {"strategies", c.eval.strategies},
          {"ablations", c.eval.ablations}};
  Json train = training::train_to_json(c.train);
  if (!c.train.gamma && !c.train.ablation.gamma_value) train["gamma"] = nullptr;
  return Json{{"seed", c.seed},
              {"data", data},
              {"model", training::architecture_to_json(c.train.arch)},
              {"train", train},
              {"eval", ev},
              {"output", {{"dir", c.output_dir.string()}}}};
}

}  // namespace xcorpus::cli
