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

#include <stdexcept>
#include <string>

namespace xcorpus {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A configuration value is outside its documented domain.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input data is malformed or inconsistent.
class DataError : public Error {
 public:
  using Error::Error;
};

// Container load failures, one type per cause.
class BadMagicError : public DataError {
 public:
  using DataError::DataError;
};
class VersionError : public DataError {
 public:
  using DataError::DataError;
};
class TruncatedError : public DataError {
 public:
  using DataError::DataError;
};
class WidthError : public DataError {
 public:
  using DataError::DataError;
};

/// A caller broke an API precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// An evaluation protocol cannot be formed from the given data.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Filesystem or stream failure; the message carries the path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace xcorpus
