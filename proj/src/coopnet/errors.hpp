// Copyright 2026 The coopnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COOPNET_ERRORS_HPP_
#define COOPNET_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coopnet {

// Coarse error classes. They map one-to-one onto the C API status codes and
// the CLI exit codes.
enum class ErrorKind {
  kConfig,
  kData,
  kNumeric,
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorKind::kConfig, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::kData, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what)
      : Error(ErrorKind::kNumeric, what) {}
};

// Malformed input record. `line` is 1-based and counts the header.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyDatasetError : public DataError {
 public:
  using DataError::DataError;
};

class RangeError : public DataError {
 public:
  using DataError::DataError;
};

class LabelSetError : public DataError {
 public:
  using DataError::DataError;
};

class DimensionError : public DataError {
 public:
  using DataError::DataError;
};

class WeightError : public DataError {
 public:
  using DataError::DataError;
};

class EmptySampleError : public DataError {
 public:
  using DataError::DataError;
};

class LookupError : public DataError {
 public:
  using DataError::DataError;
};

class MissingGroundTruthError : public DataError {
 public:
  using DataError::DataError;
};

// Modularity of a graph without edges.
class UndefinedModularityError : public DataError {
 public:
  using DataError::DataError;
};

class FormatError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class DivergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace coopnet

#endif  // COOPNET_ERRORS_HPP_
