// Copyright 2026 The bmetric Authors
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

namespace bmetric {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed script document. Carries the element path and, when the XML
/// reader could locate it, a 1-based line number (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(std::string path, std::string message, std::size_t line = 0)
      : Error(format(path, message, line)),
        path_(std::move(path)),
        detail_(std::move(message)),
        line_(line) {}

  const std::string& path() const noexcept { return path_; }
  const std::string& detail() const noexcept { return detail_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& path, const std::string& msg,
                            std::size_t line) {
    std::string out;
    if (line != 0) out += "line " + std::to_string(line) + ": ";
    if (!path.empty()) out += path + ": ";
    return out + msg;
  }

  std::string path_;
  std::string detail_;
  std::size_t line_;
};

/// Syntax error in an attribute expression; position is a 0-based offset.
class ExpressionSyntaxError : public Error {
 public:
  ExpressionSyntaxError(std::size_t position, const std::string& message)
      : Error("at offset " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// The script is structurally parsed but violates a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Failure while computing a score: unbound variable, division by zero,
/// missing scenario selection, out-of-range input.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A named task, behaviour, attribute or decision point does not exist.
class LookupError : public Error {
 public:
  using Error::Error;
};

}  // namespace bmetric
