// Copyright 2025 The ssd Authors.
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

#ifndef SSD_ERROR_HPP_
#define SSD_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ssd {

// Base of every exception thrown by the library. The CLI maps the concrete
// subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arguments outside an operation's domain (bad level, wrong shape, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed design file. line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(message), line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// A declared or required combinatorial property does not hold.
class VerificationError : public Error {
 public:
  using Error::Error;
};

// A catalog entry needs a source design that is neither generated, embedded,
// searchable nor present in the ingestion directory.
class MissingSource : public Error {
 public:
  using Error::Error;
};

// Broken internal invariant; indicates a bug in this library.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ssd

#endif  // SSD_ERROR_HPP_
