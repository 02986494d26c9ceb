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

#include "xcorpus/data/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "xcorpus/core/binary_io.hpp"
#include "xcorpus/core/errors.hpp"

namespace xcorpus::data {

std::string encode_dataset(const CorpusDataset& ds) {
  ds.validate();
  io::ByteWriter w;
  w.raw(std::string_view(kDatasetMagic, 4));
  w.put<std::uint32_t>(kDatasetVersion);
  w.put<std::uint64_t>(ds.size());
  w.put<std::uint64_t>(static_cast<std::uint64_t>(ds.features.cols()));
  w.matrix_body(ds.features);
  for (int v : ds.labels) w.put<std::int32_t>(v);
  for (int v : ds.subjects) w.put<std::int32_t>(v);
  for (int v : ds.sessions) w.put<std::int32_t>(v);
  w.str(ds.corpus_tag);
  return w.take();
}

CorpusDataset decode_dataset(const std::string& bytes) {
  if (bytes.size() < 4 || std::string_view(bytes.data(), 4) != std::string_view(kDatasetMagic, 4))
    throw BadMagicError("dataset: bad magic bytes");
  io::ByteReader r(bytes, "dataset");
  r.raw(4);
  const auto version = r.get<std::uint32_t>();
  if (version != kDatasetVersion) throw VersionError("dataset: unsupported version " + std::to_string(version));
  const auto n = r.get<std::uint64_t>();
  const auto width = r.get<std::uint64_t>();
  if (width != static_cast<std::uint64_t>(kFeatureWidth))
    throw WidthError("dataset: feature width " + std::to_string(width) + ", expected " +
                     std::to_string(kFeatureWidth));
  CorpusDataset ds;
  ds.features = r.matrix_body(n, width);
  const auto rows = r.checked_count(n, 3 * sizeof(std::int32_t));
  ds.labels.resize(rows);
  ds.subjects.resize(rows);
  ds.sessions.resize(rows);
  for (auto& v : ds.labels) v = r.get<std::int32_t>();
  for (auto& v : ds.subjects) v = r.get<std::int32_t>();
  for (auto& v : ds.sessions) v = r.get<std::int32_t>();
  ds.corpus_tag = r.str();
  if (!r.at_end()) throw DataError("dataset: trailing bytes");
  return ds;
}

void save_dataset(const CorpusDataset& ds, const std::filesystem::path& path) {
  io::write_file_atomic(path, encode_dataset(ds));
}

CorpusDataset load_dataset(const std::filesystem::path& path) {
  try {
    return decode_dataset(io::read_file(path));
  } catch (const BadMagicError& e) {
    throw BadMagicError(path.string() + ": " + e.what());
  } catch (const VersionError& e) {
    throw VersionError(path.string() + ": " + e.what());
  } catch (const TruncatedError& e) {
    throw TruncatedError(path.string() + ": " + e.what());
  } catch (const WidthError& e) {
    throw WidthError(path.string() + ": " + e.what());
  }
}

std::string csv_header() {
  std::string h;
  for (int k = 0; k < kFeatureWidth; ++k) h += "f" + std::to_string(k) + ",";
  h += "label,subject,session";
  return h;
}

namespace {

template <typename T>
T parse_field(std::string_view s, const std::filesystem::path& path, std::size_t line) {
  T v{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw DataError(path.string() + ":" + std::to_string(line) + ": cannot parse '" + std::string(s) + "'");
  return v;
}

}  // namespace

CorpusDataset load_csv(const std::filesystem::path& path, const std::string& corpus_tag) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw DataError(path.string() + ": empty csv");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != csv_header()) throw DataError(path.string() + ": csv header does not match f0..f309,label,subject,session");
  std::vector<std::vector<double>> rows;
  CorpusDataset ds;
  ds.corpus_tag = corpus_tag;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != static_cast<std::size_t>(kFeatureWidth + 3))
      throw WidthError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(kFeatureWidth + 3) + " fields");
    std::vector<double> row(kFeatureWidth);
    for (int k = 0; k < kFeatureWidth; ++k) row[k] = parse_field<double>(fields[k], path, lineno);
    rows.push_back(std::move(row));
    ds.labels.push_back(parse_field<int>(fields[kFeatureWidth], path, lineno));
    ds.subjects.push_back(parse_field<int>(fields[kFeatureWidth + 1], path, lineno));
    ds.sessions.push_back(parse_field<int>(fields[kFeatureWidth + 2], path, lineno));
  }
  ds.features.resize(static_cast<Eigen::Index>(rows.size()), kFeatureWidth);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int k = 0; k < kFeatureWidth; ++k) ds.features(static_cast<Eigen::Index>(i), k) = rows[i][k];
  ds.validate();
  return ds;
}

void save_csv(const CorpusDataset& ds, const std::filesystem::path& path) {
  ds.validate();
  std::ostringstream os;
  os << csv_header() << '\n';
  char buf[64];
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (int k = 0; k < kFeatureWidth; ++k) {
      // Shortest round-trip representation.
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), ds.features(static_cast<Eigen::Index>(i), k));
      os.write(buf, ptr - buf);
      os << ',';
    }
    os << ds.labels[i] << ',' << ds.subjects[i] << ',' << ds.sessions[i] << '\n';
  }
  io::write_file_atomic(path, os.str());
}

}  // namespace xcorpus::data
