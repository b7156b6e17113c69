// SPDX-License-Identifier: Apache-2.0
//
// rfsplat - radio-frequency Gaussian splatting with geometric-algebra attention
// Copyright (C) 2026 The rfsplat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace rfsplat {

// Raised when an operator that must be inverted has a vanishing norm.
class SingularOperatorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when a primitive sits on the receiver and cannot be projected.
class DegenerateProjectionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when a caller violates an ordering or shape contract that the
// callee does not repair (e.g. unsorted tile lists handed to the compositor).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised when an object is used in a state it was not prepared for, such as
// requesting gradients without a recorded forward pass.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// File-level problems: missing headers, wrong shapes, unsupported versions.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Row-level problems while reading text data; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Training produced a non-finite loss.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rfsplat
