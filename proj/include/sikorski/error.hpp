// Copyright 2026 The Sikorski Authors
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

namespace sikorski {

// Base of every error raised by the library. The C API maps each subclass to
// a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text did not match the expression grammar, or named an unknown variable or
// primitive. `offset()` is a byte offset into the parsed text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Evaluation reached a singular point (tan pole, log <= 0, sqrt < 0, x/0,
// abs kink under differentiation) or produced a non-finite value.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, std::string node)
      : Error(what + " in '" + node + "'"), node_(std::move(node)) {}
  const std::string& node() const noexcept { return node_; }

 private:
  std::string node_;
};

// A name (generator, probe, family, map, variable) does not resolve.
class ReferenceError : public Error {
 public:
  using Error::Error;
};

// A constructed object violates one of its stated invariants, or an
// operation's precondition does not hold.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Spec-file problem with a source location.
class SpecError : public Error {
 public:
  SpecError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace sikorski
