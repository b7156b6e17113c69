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

#include <memory>

#include "rfsplat/autodiff/tape.hpp"
#include "rfsplat/render/raster.hpp"

namespace rfsplat::render {

// Everything about a render that is not differentiated.
struct RenderSetup {
  ReceiverPose receiver;
  Mercator mercator;
  std::shared_ptr<const SampleGrid> grid;
  int tile_size = 16;
  CompositeConfig composite;
  int sh_degree = 2;
};

// Tape handles for the per-primitive inputs: position N x 3, rotation N x 4,
// log_scale N x 3, opacity N x 1, signal N x 2 (deg+1)^2, attenuation N x 1.
struct RenderVars {
  ad::Var position, rotation, log_scale, opacity, signal, attenuation;
};

// Plain forward render.
PerceptionPlane render(const RenderPrimitives& prims, const RenderSetup& setup);

// Differentiable render; the result is a grid.rows x grid.cols tensor.
ad::Var render(ad::Tape& tape, const RenderVars& vars, const RenderSetup& setup);

}  // namespace rfsplat::render
