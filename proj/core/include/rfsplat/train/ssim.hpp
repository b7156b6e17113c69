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

namespace rfsplat::train {

struct SsimConfig {
  int window = 11;     // odd
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;

  // Throws std::invalid_argument for an even or non-positive window or a
  // non-positive sigma.
  void validate() const;
};

// Mean local SSIM of two rows x cols grids with dynamic range L. Local
// statistics use the Gaussian window clipped to the grid and renormalized,
// so every pixel contributes and grids smaller than the window are fine.
// Throws std::invalid_argument on a size mismatch, an empty grid or L <= 0.
double ssim(std::span<const double> a, std::span<const double> b, int rows, int cols,
            double dynamic_range, const SsimConfig& cfg = {});

// Differentiable in both arguments; returns a 1x1 value.
ad::Var ssim(ad::Tape& t, ad::Var a, ad::Var b, double dynamic_range, const SsimConfig& cfg = {});

}  // namespace rfsplat::train
