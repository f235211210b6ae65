// Copyright 2026 The ParityLens Authors
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

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace paritylens {

// Base for every error the library reports. Callers that only need a message
// and an exit code can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input file does not match the requested column roles.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A cell holds a token that cannot be interpreted (e.g. outcome "2").
class ValueError : public Error {
 public:
  ValueError(const std::string& message, std::optional<std::size_t> row)
      : Error(row ? message + " (row " + std::to_string(*row) + ")" : message),
        row_(row) {}

  /// 1-based data row (header excluded), when the error is tied to one.
  std::optional<std::size_t> row() const { return row_; }

 private:
  std::optional<std::size_t> row_;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// Parameter outside its mathematical domain (B <= 0, probability > 1, ...).
class DomainError : public Error {
 public:
  DomainError(const std::string& field, const std::string& message)
      : Error(field + ": " + message), field_(field) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Requested enumeration would exceed the configured work limit.
class CostLimitError : public Error {
 public:
  CostLimitError(const std::string& message, unsigned long long estimate)
      : Error(message), estimate_(estimate) {}

  unsigned long long estimate() const { return estimate_; }

 private:
  unsigned long long estimate_;
};

}  // namespace paritylens
