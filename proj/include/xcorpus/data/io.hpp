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

#include <filesystem>
#include <string>

#include "xcorpus/data/dataset.hpp"

namespace xcorpus::data {

inline constexpr char kDatasetMagic[4] = {'X', 'C', 'D', 'S'};
inline constexpr std::uint32_t kDatasetVersion = 1;

/// Binary container (little-endian):
///   "XCDS" u32 version | u64 n | u64 width | f64 features, row-major |
///   i32 labels[n] | i32 subjects[n] | i32 sessions[n] | u64 len, tag bytes
std::string encode_dataset(const CorpusDataset& ds);
CorpusDataset decode_dataset(const std::string& bytes);

void save_dataset(const CorpusDataset& ds, const std::filesystem::path& path);
CorpusDataset load_dataset(const std::filesystem::path& path);

/// CSV with the exact header f0,...,f309,label,subject,session.
CorpusDataset load_csv(const std::filesystem::path& path, const std::string& corpus_tag);
void save_csv(const CorpusDataset& ds, const std::filesystem::path& path);
std::string csv_header();

}  // namespace xcorpus::data
