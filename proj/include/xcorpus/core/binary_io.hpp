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

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <string>
#include <string_view>
#include <type_traits>

#include "xcorpus/core/errors.hpp"
#include "xcorpus/core/types.hpp"

namespace xcorpus::io {

static_assert(std::endian::native == std::endian::little,
              "containers are written in host order, which must be little-endian");

/// Appends fixed-width little-endian values to a byte string.
class ByteWriter {
 public:
  template <typename T>
    requires std::is_arithmetic_v<T>
  void put(T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out_.append(buf, sizeof(T));
  }
  void raw(std::string_view bytes) { out_.append(bytes); }
  void str(std::string_view s) {
    put<std::uint64_t>(s.size());
    raw(s);
  }
  void doubles(const double* data, std::size_t n) {
    out_.append(reinterpret_cast<const char*>(data), n * sizeof(double));
  }
  /// Row-major dump of a matrix body (no shape).
  void matrix_body(const Matrix& m);

  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

/// Bounds-checked reader; running past the end raises TruncatedError.
class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes, std::string context = "buffer")
      : bytes_(bytes), context_(std::move(context)) {}

  template <typename T>
    requires std::is_arithmetic_v<T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::string_view raw(std::size_t n) {
    need(n);
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::string str() { return std::string(raw(checked_count(get<std::uint64_t>(), 1))); }
  Matrix matrix_body(std::uint64_t rows, std::uint64_t cols);

  /// Validates that `count` items of `item_size` bytes can still be read.
  std::size_t checked_count(std::uint64_t count, std::size_t item_size) {
    if (item_size != 0 && count > (bytes_.size() - pos_) / item_size) truncated();
    return static_cast<std::size_t>(count);
  }
  bool at_end() const { return pos_ == bytes_.size(); }
  std::size_t position() const { return pos_; }

 private:
  void need(std::size_t n) {
    if (n > bytes_.size() - pos_) truncated();
  }
  [[noreturn]] void truncated() const { throw TruncatedError(context_ + ": truncated data"); }

  std::string_view bytes_;
  std::size_t pos_ = 0;
  std::string context_;
};

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temp file then renames over `path`. Creates parent
/// directories as needed.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace xcorpus::io
