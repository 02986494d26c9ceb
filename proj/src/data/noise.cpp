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

#include "xcorpus/data/noise.hpp"

#include <cmath>
#include <numeric>

#include "xcorpus/core/errors.hpp"
#include "xcorpus/core/rng.hpp"

namespace xcorpus::data {

CorpusDataset inject_label_noise(const CorpusDataset& ds, double fraction, std::uint64_t seed, int classes) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw ConfigError("noise fraction must lie in [0, 1]");
  if (classes < 1) throw ConfigError("noise injection needs at least one class");
  CorpusDataset out = ds;
  const std::size_t n = ds.size();
  const auto count = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  if (count == 0) return out;
  Rng rng = make_rng(seed, "label-noise");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  // Partial Fisher-Yates: the first `count` slots are the selected rows.
  for (std::size_t k = 0; k < count; ++k) {
    const auto j = k + uniform_index(rng, n - k);
    std::swap(idx[k], idx[j]);
  }
  for (std::size_t k = 0; k < count; ++k)
    out.labels[idx[k]] = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(classes)));
  return out;
}

}  // namespace xcorpus::data
