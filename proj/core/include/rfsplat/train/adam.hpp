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

#include <cstdint>
#include <span>
#include <vector>

#include "rfsplat/autodiff/params.hpp"

namespace rfsplat::train {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  void validate() const;
};

// Bias-corrected Adam over every tensor of a ParameterSet.
class Adam {
 public:
  explicit Adam(AdamConfig cfg = {});

  // One update from gradients shaped like the parameters. Throws
  // std::invalid_argument when the gradient list does not match.
  void step(ad::ParameterSet& params, std::span<const ad::Tensor> grads);

  std::int64_t steps() const { return t_; }
  const AdamConfig& config() const { return cfg_; }

 private:
  AdamConfig cfg_;
  std::vector<ad::Tensor> m_, v_;
  std::int64_t t_ = 0;
};

}  // namespace rfsplat::train
