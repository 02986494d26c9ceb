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
#include <vector>

#include "xcorpus/data/dataset.hpp"
#include "xcorpus/training/trainer.hpp"

namespace xcorpus::eval {

// CSV: domain,label,subject,session,z0..z{d-1}; values printed with %.17g.
struct EmbeddingTable {
  std::vector<std::string> domains;
  Labels labels;
  std::vector<int> subjects;
  std::vector<int> sessions;
  Matrix latent;
};

struct DomainSet {
  std::string domain;
  const data::CorpusDataset* dataset;
};

EmbeddingTable embed(const training::TrainedModel& model, const std::vector<DomainSet>& sets);

void export_embeddings(const training::TrainedModel& model, const std::vector<DomainSet>& sets,
                       const std::filesystem::path& path);

void write_embeddings(const EmbeddingTable& table, const std::filesystem::path& path);
EmbeddingTable read_embeddings(const std::filesystem::path& path);

// Ratio of mean between-class-mean distance to mean within-class spread.
double class_separation(const Matrix& x, std::span<const int> labels, int classes);

}  // namespace xcorpus::eval
