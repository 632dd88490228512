// Copyright 2026 The Stylecomp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STYLECOMP_ERRORS_H_
#define STYLECOMP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace stylecomp {

// Base of every error thrown by the library. The CLI maps subclasses onto
// process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; the message carries the line number when known.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A term listed under two taxonomy classes.
class ConflictError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Shape mismatch between tensors; the message names both shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// Non-finite values, divergence.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Inconsistent model configuration (e.g. output width vs attention flag).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Data-level failures: empty corpora, unknown vocabulary, missing resources.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace stylecomp

#endif  // STYLECOMP_ERRORS_H_
