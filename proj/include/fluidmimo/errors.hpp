// Copyright 2026 The fluidmimo Authors.
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
#include <stdexcept>
#include <string>
#include <utility>

namespace fluidmimo {

/// Non-finite or out-of-range numeric input.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Shapes or indices that do not agree with the array dimensions.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configuration value failed validation. `key()` names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::invalid_argument("invalid value for '" + key + "': " + what),
        key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Malformed channel file. `line()` is 1-based; 0 means "end of input".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An exhaustive enumeration would exceed its configured combination cap.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(double combinations, double cap, const std::string& context = {})
      : std::runtime_error(message(combinations, cap, context)),
        combinations_(combinations),
        cap_(cap) {}

  double combinations() const noexcept { return combinations_; }
  double cap() const noexcept { return cap_; }

 private:
  static std::string message(double combinations, double cap,
                             const std::string& context);

  double combinations_;
  double cap_;
};

}  // namespace fluidmimo
