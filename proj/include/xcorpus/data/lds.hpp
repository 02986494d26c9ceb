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

#include "xcorpus/core/types.hpp"

namespace xcorpus::data {

/// Smooths each column of a T x d feature sequence with a random-walk
/// linear dynamic system: Kalman forward filter then Rauch-Tung-Striebel
/// backward pass. q is the process variance, r the observation variance.
Matrix lds_smooth(const Matrix& series, double q = 1e-3, double r = 1e-2);

}  // namespace xcorpus::data
