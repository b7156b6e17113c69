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

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rfsplat/autodiff/tape.hpp"

namespace rfsplat::ad {

// Ordered collection of named parameter tensors. Order is insertion order
// and is what optimizers, checkpoints and gradient checks iterate over.
class ParameterSet {
 public:
  // Returns the slot of the new tensor; throws std::invalid_argument on a
  // duplicate name.
  int add(std::string name, Tensor value);
  // Throws std::out_of_range for an unknown name.
  int index(std::string_view name) const;
  bool contains(std::string_view name) const;

  Tensor& operator[](int slot) { return values_.at(static_cast<std::size_t>(slot)); }
  const Tensor& operator[](int slot) const { return values_.at(static_cast<std::size_t>(slot)); }
  const std::string& name(int slot) const { return names_.at(static_cast<std::size_t>(slot)); }

  int size() const { return static_cast<int>(values_.size()); }
  std::size_t scalar_count() const;

  // Records every tensor as a leaf (or a constant) and returns the handles in
  // slot order.
  std::vector<Var> bind(Tape& tape, bool trainable = true) const;

  friend bool operator==(const ParameterSet& a, const ParameterSet& b) {
    return a.names_ == b.names_ && a.values_ == b.values_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Tensor> values_;
  std::unordered_map<std::string, int> lookup_;
};

}  // namespace rfsplat::ad
