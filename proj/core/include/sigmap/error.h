// Copyright 2026 The sigmap Authors
// SPDX-License-Identifier: Apache-2.0
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

#ifndef SIGMAP_ERROR_H_
#define SIGMAP_ERROR_H_

#include <stdexcept>
#include <string>

namespace sigmap {

// Base class for every error raised by the library. The CLI maps the
// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Out-of-domain argument (negative std, R <= 0, odd batch, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Shapes or channel counts that do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Malformed or unsupported file content.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Open/read/write failures.
class IoError : public Error {
 public:
  using Error::Error;
};

// Non-finite values during training or inference.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Input that is well-formed but makes the operation undefined,
// e.g. an all-zero brightness field.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

[[noreturn]] void ThrowParameter(const std::string& what);
[[noreturn]] void ThrowDimension(const std::string& what);

}  // namespace sigmap

#endif  // SIGMAP_ERROR_H_
