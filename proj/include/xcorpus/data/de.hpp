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

#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "xcorpus/core/types.hpp"

namespace xcorpus::data {

inline constexpr double kSampleRateHz = 200.0;
inline constexpr int kSegmentSamples = 200;  // one second

struct FrequencyBand {
  std::string_view name;
  double low_hz;
  double high_hz;  // inclusive
};

inline constexpr std::array<FrequencyBand, kBands> kFrequencyBands = {{
    {"delta", 1.0, 3.0},
    {"theta", 4.0, 7.0},
    {"alpha", 8.0, 13.0},
    {"beta", 14.0, 30.0},
    {"gamma", 31.0, 50.0},
}};

inline constexpr double kVarianceFloor = 1e-12;

/// One second of multichannel signal: 62 rows (channels, fixed montage
/// order) by 200 samples.
struct RawSegment {
  Matrix samples;
};

/// One-sided periodogram |X_k|^2 for k = 0..N/2 (rectangular window).
std::vector<double> periodogram(std::span<const double> x);

/// Variance carried by bins whose frequency lies in [low, high]:
/// (1/N^2) * sum c_k |X_k|^2 with c_k = 2 except at DC and Nyquist.
double band_variance(std::span<const double> x, double sample_rate, double low_hz, double high_hz);

/// Variance over every non-DC bin; equals the population variance.
double full_band_variance(std::span<const double> x);

/// 0.5 * ln(2 pi e sigma^2) with sigma^2 floored at 1e-12.
double differential_entropy(double variance);

/// 310 DE features ordered channel-major then band.
Vector compute_de(const RawSegment& segment);

}  // namespace xcorpus::data
