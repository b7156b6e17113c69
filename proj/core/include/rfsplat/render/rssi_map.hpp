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
#include <vector>

#include "rfsplat/autodiff/tape.hpp"
#include "rfsplat/render/raster.hpp"

namespace rfsplat::render {

struct RssiMapConfig {
  double temperature = 0.1;
  double uniform_blend = 0.05;
  double reference_power = 1.0;

  // Throws std::invalid_argument unless temperature > 0, blend in [0, 1] and
  // the reference power is positive.
  void validate() const;
};

// Attention weights over the map: softmax of the mean-centred, temperature
// scaled values, blended with a uniform prior.
std::vector<double> rssi_map_weights(std::span<const double> map, const RssiMapConfig& cfg);
// Weighted average of the map (linear power).
double rssi_map_power(std::span<const double> map, const RssiMapConfig& cfg);
// The same in dB; an all-zero map gives the silent sentinel.
double rssi_from_map(std::span<const double> map, const RssiMapConfig& cfg = {});
double rssi_from_map(const PerceptionPlane& plane, const RssiMapConfig& cfg = {});

// Differentiable version producing a 1x1 dB value. Maps with zero power have
// no gradient.
ad::Var rssi_from_map(ad::Tape& tape, ad::Var map, const RssiMapConfig& cfg = {});

}  // namespace rfsplat::render
