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

#include "rfsplat/train/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace rfsplat::train {

void AdamConfig::validate() const {
  if (!(lr > 0.0) || !(eps > 0.0)) throw std::invalid_argument("adam lr and eps must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw std::invalid_argument("adam betas must lie in [0, 1)");
  }
}

Adam::Adam(AdamConfig cfg) : cfg_(cfg) { cfg_.validate(); }

void Adam::step(ad::ParameterSet& params, std::span<const ad::Tensor> grads) {
  if (grads.size() != static_cast<std::size_t>(params.size())) {
    throw std::invalid_argument("one gradient per parameter tensor expected");
  }
  if (m_.empty()) {
    for (int s = 0; s < params.size(); ++s) {
      m_.emplace_back(params[s].rows, params[s].cols);
      v_.emplace_back(params[s].rows, params[s].cols);
    }
  }
  ++t_;
  const double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (int s = 0; s < params.size(); ++s) {
    auto& p = params[s];
    const auto& g = grads[static_cast<std::size_t>(s)];
    auto& m = m_[static_cast<std::size_t>(s)];
    auto& v = v_[static_cast<std::size_t>(s)];
    if (!g.same_shape(p) || !m.same_shape(p)) throw std::invalid_argument("gradient shape mismatch");
    for (std::size_t k = 0; k < p.data.size(); ++k) {
      m.data[k] = cfg_.beta1 * m.data[k] + (1.0 - cfg_.beta1) * g.data[k];
      v.data[k] = cfg_.beta2 * v.data[k] + (1.0 - cfg_.beta2) * g.data[k] * g.data[k];
      p.data[k] -= cfg_.lr * (m.data[k] / c1) / (std::sqrt(v.data[k] / c2) + cfg_.eps);
    }
  }
}

}  // namespace rfsplat::train
