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

#include "rfsplat/autodiff/params.hpp"

#include <stdexcept>

namespace rfsplat::ad {

int ParameterSet::add(std::string name, Tensor value) {
  if (lookup_.contains(name)) throw std::invalid_argument("duplicate parameter " + name);
  const int slot = size();
  lookup_.emplace(name, slot);
  names_.push_back(std::move(name));
  values_.push_back(std::move(value));
  return slot;
}

int ParameterSet::index(std::string_view name) const {
  const auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) throw std::out_of_range("unknown parameter " + std::string(name));
  return it->second;
}

bool ParameterSet::contains(std::string_view name) const {
  return lookup_.contains(std::string(name));
}

std::size_t ParameterSet::scalar_count() const {
  std::size_t n = 0;
  for (const auto& v : values_) n += v.data.size();
  return n;
}

std::vector<Var> ParameterSet::bind(Tape& tape, bool trainable) const {
  std::vector<Var> out;
  out.reserve(values_.size());
  for (const auto& v : values_) out.push_back(trainable ? tape.leaf(v) : tape.constant(v));
  return out;
}

}  // namespace rfsplat::ad
