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

#include <span>

#include "rfsplat/autodiff/tape.hpp"
#include "rfsplat/train/ssim.hpp"

namespace rfsplat::train {

struct LossConfig {
  double beta = 0.8;        // MAE weight, the rest goes to 1 - SSIM
  double alpha_reg = 1e-4;  // L2 weight on the opacity residual
  SsimConfig ssim;

  void validate() const;
};

// max(gt) - min(gt) over the whole batch; 1 for a flat batch.
double dynamic_range(std::span<const ad::Tensor> gt);

// (1/M) sum_i [beta MAE_i + (1 - beta)(1 - SSIM_i)] + alpha_reg |d_attn|^2.
// The SSIM term is skipped entirely when beta = 1. Throws
// std::invalid_argument for an empty batch or mismatched shapes.
double loss(std::span<const ad::Tensor> pred, std::span<const ad::Tensor> gt,
            std::span<const double> d_attn, const LossConfig& cfg);

ad::Var loss(ad::Tape& t, std::span<const ad::Var> pred, std::span<const ad::Tensor> gt,
             ad::Var d_attn, const LossConfig& cfg);

}  // namespace rfsplat::train
