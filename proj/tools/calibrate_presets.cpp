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

// Scans one generator constant of a preset and reports the source-trained linear probe's target accuracy.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "xcorpus/data/synth.hpp"
#include "xcorpus/eval/metrics.hpp"
#include "xcorpus/eval/probe.hpp"

using namespace xcorpus;

int main(int argc, char** argv) {
  CLI::App app{"linear-probe calibration scan for synthetic presets"};
  std::string preset = "moderate-shift";
  std::string field = "translation";
  std::vector<double> values;
  int seeds = 5;
  app.add_option("--preset", preset);
  app.add_option("--field", field, "translation | rotation_deg | translation_alignment | subject_shift");
  app.add_option("--values", values)->required();
  app.add_option("--seeds", seeds);
  CLI11_PARSE(app, argc, argv);

  std::printf("preset,field,value,probe_mean,probe_std\n");
  for (double v : values) {
    std::vector<double> accs;
    for (int s = 0; s < seeds; ++s) {
      data::SynthSpec spec = data::synth_preset(preset);
      spec.seed = static_cast<std::uint64_t>(s);
      if (field == "translation") spec.translation = v;
      else if (field == "rotation_deg") spec.rotation_deg = v;
      else if (field == "translation_alignment") spec.translation_alignment = v;
      else if (field == "subject_shift") spec.subject_shift = v;
      else {
        std::cerr << "unknown field " << field << "\n";
        return 2;
      }
      const auto [source, target] = data::synth_pair(spec);
      accs.push_back(eval::linear_probe_accuracy(source, target, spec.classes));
    }
    std::printf("%s,%s,%g,%.4f,%.4f\n", preset.c_str(), field.c_str(), v, eval::mean(accs),
                eval::population_std(accs));
  }
  return 0;
}
