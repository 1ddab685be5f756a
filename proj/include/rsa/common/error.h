// Copyright 2026 The RSA-Sim Authors
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

#ifndef RSA_COMMON_ERROR_H_
#define RSA_COMMON_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rsa {

// Base class for every error the library reports. Callers that only need a
// message can catch this; the subclasses carry structured context.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. `line` is 1-based; 0 means "end of input" or unknown.
class ParseError : public Error {
 public:
  ParseError(std::string what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line),
        detail_(std::move(what)) {}

  std::size_t line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

// A value violates a documented invariant (bad range, mismatched sizes, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Filesystem failures.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace rsa

#endif  // RSA_COMMON_ERROR_H_
