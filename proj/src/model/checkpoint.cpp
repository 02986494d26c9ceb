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

#include "xcorpus/model/checkpoint.hpp"

#include "xcorpus/core/binary_io.hpp"

namespace xcorpus::model {

std::string encode_checkpoint(const Checkpoint& ckpt) {
  io::ByteWriter w;
  w.raw(std::string_view(kCheckpointMagic, 4));
  w.put<std::uint32_t>(kCheckpointVersion);
  w.str(ckpt.config);
  w.put<std::uint64_t>(ckpt.params.size());
  for (const auto& [name, p] : ckpt.params) {
    w.str(name);
    w.put<std::uint64_t>(static_cast<std::uint64_t>(p.value.rows()));
    w.put<std::uint64_t>(static_cast<std::uint64_t>(p.value.cols()));
    w.put<std::int64_t>(p.steps);
    w.put<std::uint8_t>(p.frozen ? 1 : 0);
    w.matrix_body(p.value);
    w.matrix_body(p.first_moment);
    w.matrix_body(p.second_moment);
  }
  const Matrix& psi = ckpt.prototypes.psi();
  w.put<std::uint64_t>(static_cast<std::uint64_t>(psi.rows()));
  w.put<std::uint64_t>(static_cast<std::uint64_t>(psi.cols()));
  w.put<double>(ckpt.prototypes.momentum());
  w.matrix_body(psi);
  for (long long c : ckpt.prototypes.counts()) w.put<std::int64_t>(c);
  w.str(ckpt.state);
  return w.take();
}

Checkpoint decode_checkpoint(const std::string& bytes) {
  io::ByteReader r(bytes, "checkpoint");
  if (bytes.size() < 4 || std::string_view(bytes.data(), 4) != std::string_view(kCheckpointMagic, 4))
    throw BadMagicError("checkpoint: bad magic bytes");
  r.raw(4);
  const auto version = r.get<std::uint32_t>();
  if (version != kCheckpointVersion)
    throw VersionError("checkpoint: unsupported version " + std::to_string(version));
  Checkpoint ckpt;
  ckpt.config = r.str();
  const auto count = r.checked_count(r.get<std::uint64_t>(), 1);
  for (std::size_t k = 0; k < count; ++k) {
    const std::string name = r.str();
    const auto rows = r.get<std::uint64_t>();
    const auto cols = r.get<std::uint64_t>();
    const auto steps = r.get<std::int64_t>();
    const bool frozen = r.get<std::uint8_t>() != 0;
    ad::Parameter& p = ckpt.params.add(name, r.matrix_body(rows, cols));
    p.first_moment = r.matrix_body(rows, cols);
    p.second_moment = r.matrix_body(rows, cols);
    p.steps = steps;
    p.frozen = frozen;
  }
  const auto prow = r.get<std::uint64_t>();
  const auto pcol = r.get<std::uint64_t>();
  const double momentum = r.get<double>();
  Matrix psi = r.matrix_body(prow, pcol);
  r.checked_count(prow, sizeof(std::int64_t));
  PrototypeBank bank(static_cast<int>(prow), static_cast<int>(pcol), momentum);
  bank.psi() = std::move(psi);
  for (std::uint64_t c = 0; c < prow; ++c) bank.counts()[c] = r.get<std::int64_t>();
  ckpt.prototypes = std::move(bank);
  ckpt.state = r.str();
  if (!r.at_end()) throw DataError("checkpoint: trailing bytes");
  return ckpt;
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  io::write_file_atomic(path, encode_checkpoint(ckpt));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  return decode_checkpoint(io::read_file(path));
}

}  // namespace xcorpus::model
