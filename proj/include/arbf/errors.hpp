// Copyright 2026 The arbf-scaffold Authors
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

namespace arbf {

/// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class HeaderMismatchError : public Error {
 public:
  using Error::Error;
};

class InvalidBBoxError : public Error {
 public:
  using Error::Error;
};

/// Two interpolation centers coincide; the input mesh is degenerate.
class DuplicateCenterError : public Error {
 public:
  using Error::Error;
};

/// LU met a pivot below the relative threshold.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// Perturbation produced a collapsed or inverted cell.
class DegenerateResultError : public Error {
 public:
  using Error::Error;
};

}  // namespace arbf
