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

#include "xcorpus/eval/embeddings.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "xcorpus/core/binary_io.hpp"
#include "xcorpus/core/errors.hpp"
#include "xcorpus/model/network.hpp"

namespace xcorpus::eval {

EmbeddingTable embed(const training::TrainedModel& model, const std::vector<DomainSet>& sets) {
  EmbeddingTable t;
  Eigen::Index rows = 0;
  for (const auto& s : sets) rows += static_cast<Eigen::Index>(s.dataset->size());
  t.latent.resize(rows, model.config.arch.latent);
  Eigen::Index at = 0;
  for (const auto& s : sets) {
    const Matrix z = model::extract_features(model.params, s.dataset->features, model.config.arch);
    t.latent.middleRows(at, z.rows()) = z;
    at += z.rows();
    for (std::size_t i = 0; i < s.dataset->size(); ++i) {
      t.domains.push_back(s.domain);
      t.labels.push_back(s.dataset->labels[i]);
      t.subjects.push_back(s.dataset->subjects[i]);
      t.sessions.push_back(s.dataset->sessions[i]);
    }
  }
  return t;
}

void write_embeddings(const EmbeddingTable& t, const std::filesystem::path& path) {
  std::string out = "domain,label,subject,session";
  for (Eigen::Index k = 0; k < t.latent.cols(); ++k) out += ",z" + std::to_string(k);
  out += '\n';
  char buf[64];
  for (Eigen::Index i = 0; i < t.latent.rows(); ++i) {
    const auto r = static_cast<std::size_t>(i);
    out += t.domains[r] + "," + std::to_string(t.labels[r]) + "," + std::to_string(t.subjects[r]) + "," +
           std::to_string(t.sessions[r]);
    for (Eigen::Index k = 0; k < t.latent.cols(); ++k) {
      std::snprintf(buf, sizeof(buf), ",%.17g", t.latent(i, k));
      out += buf;
    }
    out += '\n';
  }
  try {
    io::write_file_atomic(path, out);
  } catch (const std::exception& e) {
    throw IoError("cannot write embeddings to " + path.string() + ": " + e.what());
  }
}

void export_embeddings(const training::TrainedModel& model, const std::vector<DomainSet>& sets,
                       const std::filesystem::path& path) {
  write_embeddings(embed(model, sets), path);
}

EmbeddingTable read_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw DataError(path.string() + ": empty embedding file");
  const auto width = static_cast<Eigen::Index>(std::count(line.begin(), line.end(), ',')) - 3;
  if (width < 1) throw DataError(path.string() + ": malformed embedding header");
  EmbeddingTable t;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> f;
    while (std::getline(ls, field, ',')) f.push_back(field);
    if (static_cast<Eigen::Index>(f.size()) != width + 4) throw DataError(path.string() + ": ragged row");
    try {
      t.domains.push_back(f[0]);
      t.labels.push_back(std::stoi(f[1]));
      t.subjects.push_back(std::stoi(f[2]));
      t.sessions.push_back(std::stoi(f[3]));
      std::vector<double> z;
      for (Eigen::Index k = 0; k < width; ++k) z.push_back(std::stod(f[static_cast<std::size_t>(k + 4)]));
      rows.push_back(std::move(z));
    } catch (const std::logic_error&) {
      throw DataError(path.string() + ": unparsable value");
    }
  }
  t.latent.resize(static_cast<Eigen::Index>(rows.size()), width);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (Eigen::Index k = 0; k < width; ++k) t.latent(static_cast<Eigen::Index>(i), k) = rows[i][k];
  return t;
}

double class_separation(const Matrix& x, std::span<const int> labels, int classes) {
  Matrix means = Matrix::Zero(classes, x.cols());
  std::vector<double> counts(classes, 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    means.row(labels[i]) += x.row(static_cast<Eigen::Index>(i));
    counts[labels[i]] += 1.0;
  }
  for (int c = 0; c < classes; ++c)
    if (counts[c] > 0) means.row(c) /= counts[c];
  double within = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    within += (x.row(static_cast<Eigen::Index>(i)) - means.row(labels[i])).norm();
  within /= static_cast<double>(labels.size());
  double between = 0.0;
  int pairs = 0;
  for (int a = 0; a < classes; ++a)
    for (int b = a + 1; b < classes; ++b)
      if (counts[a] > 0 && counts[b] > 0) {
        between += (means.row(a) - means.row(b)).norm();
        ++pairs;
      }
  if (pairs == 0 || within == 0.0) return 0.0;
  return (between / pairs) / within;
}

}  // namespace xcorpus::eval
