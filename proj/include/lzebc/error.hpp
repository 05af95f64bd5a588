// Copyright 2026 The lzebc Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LZEBC_ERROR_HPP_
#define LZEBC_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace lzebc {

enum class ErrorKind {
  Usage,       // bad configuration or arguments
  Address,     // coordinates or indices outside a grid
  Ingest,      // malformed raw input (length, NaN/Inf)
  Overflow,    // integer range exhausted; the error bound is too small
  Data,        // otherwise invalid input data
  Corruption,  // archive fails validation or decoding
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lzebc

#endif  // LZEBC_ERROR_HPP_
