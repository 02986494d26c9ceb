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

#include "xcorpus/data/de.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>

#include "xcorpus/core/errors.hpp"

namespace xcorpus::data {

std::vector<double> periodogram(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return {};
  std::vector<double> in(x.begin(), x.end());
  const int bins = n / 2 + 1;
  fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(bins));
  fftw_plan plan = fftw_plan_dft_r2c_1d(n, in.data(), out, FFTW_ESTIMATE);
  fftw_execute(plan);
  std::vector<double> power(static_cast<std::size_t>(bins));
  for (int k = 0; k < bins; ++k) power[k] = out[k][0] * out[k][0] + out[k][1] * out[k][1];
  fftw_destroy_plan(plan);
  fftw_free(out);
  return power;
}

namespace {

// Scaled sum of periodogram bins k in [k_lo, k_hi], excluding DC.
double bin_variance(const std::vector<double>& power, std::size_t n, std::size_t k_lo, std::size_t k_hi) {
  double total = 0.0;
  const std::size_t last = power.size() - 1;
  for (std::size_t k = std::max<std::size_t>(k_lo, 1); k <= std::min(k_hi, last); ++k) {
    const bool nyquist = (n % 2 == 0) && k == n / 2;
    total += (nyquist ? 1.0 : 2.0) * power[k];
  }
  const double nn = static_cast<double>(n);
  return total / (nn * nn);
}

}  // namespace

double band_variance(std::span<const double> x, double sample_rate, double low_hz, double high_hz) {
  if (x.empty()) throw ContractError("band_variance: empty signal");
  const auto power = periodogram(x);
  const double n = static_cast<double>(x.size());
  // Bin k sits at k * fs / n Hz.
  const auto k_lo = static_cast<std::size_t>(std::ceil(low_hz * n / sample_rate - 1e-9));
  const double hi = std::floor(high_hz * n / sample_rate + 1e-9);
  if (hi < 0) return 0.0;
  return bin_variance(power, x.size(), k_lo, static_cast<std::size_t>(hi));
}

double full_band_variance(std::span<const double> x) {
  if (x.empty()) throw ContractError("full_band_variance: empty signal");
  const auto power = periodogram(x);
  return bin_variance(power, x.size(), 1, power.size() - 1);
}

double differential_entropy(double variance) {
  return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * std::max(variance, kVarianceFloor));
}

Vector compute_de(const RawSegment& segment) {
  const Matrix& s = segment.samples;
  if (s.rows() != kChannels || s.cols() != kSegmentSamples)
    throw DimensionError("compute_de: segment must be 62 x 200");
  if (!s.allFinite()) throw DataError("compute_de: non-finite sample");
  Vector out(kFeatureWidth);
  std::vector<double> channel(kSegmentSamples);
  for (int ch = 0; ch < kChannels; ++ch) {
    for (int t = 0; t < kSegmentSamples; ++t) channel[t] = s(ch, t);
    const auto power = periodogram(channel);
    for (int b = 0; b < kBands; ++b) {
      const auto& band = kFrequencyBands[b];
      // 1 Hz bins at 200 samples / 200 Hz.
      const double scale = kSegmentSamples / kSampleRateHz;
      const auto k_lo = static_cast<std::size_t>(std::ceil(band.low_hz * scale - 1e-9));
      const auto k_hi = static_cast<std::size_t>(std::floor(band.high_hz * scale + 1e-9));
      out(ch * kBands + b) = differential_entropy(bin_variance(power, kSegmentSamples, k_lo, k_hi));
    }
  }
  return out;
}

}  // namespace xcorpus::data
