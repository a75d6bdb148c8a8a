// Copyright 2026 The Termex Authors.
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

#ifndef TERMEX_ERROR_H_
#define TERMEX_ERROR_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace termex {

// Input data is malformed, inconsistent or missing. The CLI maps this to
// exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text input that fails to parse. The message carries the line number.
class ParseError : public DataError {
 public:
  ParseError(const std::string &source, int64_t line, const std::string &what)
      : DataError(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  int64_t line() const { return line_; }

 private:
  int64_t line_;
};

// Binary input that fails to load. The message carries the byte offset.
class FormatError : public DataError {
 public:
  FormatError(uint64_t offset, const std::string &what)
      : DataError("at byte offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}

  uint64_t offset() const { return offset_; }

 private:
  uint64_t offset_;
};

// An operation was called in a way its contract forbids (wrong store kind,
// bad configuration). The CLI maps this to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace termex

#endif  // TERMEX_ERROR_H_
