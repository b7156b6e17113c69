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

#include <array>
#include <vector>

#include "rfsplat/autodiff/tape.hpp"
#include "rfsplat/ga/multivector.hpp"

// Tape operations on token tensors. A token row stores its multivector
// channels back to back, channel c occupying columns [16 c, 16 c + 16) in
// blade order.
namespace rfsplat::tokenizer {

inline constexpr int kBasisMaps = 9;
inline constexpr int kInvariantBlades = 8;

struct BladeTerm {
  int src;
  int dst;
  double sign;
};

// The five grade projections followed by x -> e4 <x>_k for k = 0..3. Each
// commutes with sandwiching by a spatial rotor, so any channel mixing built
// from them is rotor equivariant.
const std::array<std::vector<BladeTerm>, kBasisMaps>& equivariant_basis(const ga::Signature& sig);

// y_o = sum_b sum_c w(b, o * in + c) phi_b(x_c) for weight 9 x (out * in).
ad::Var mv_linear(ad::Tape& t, ad::Var x, ad::Var weight, int in_channels, int out_channels,
                  const ga::Signature& sig = {});

// x_c * sigmoid(<x_c>_0) per channel.
ad::Var mv_gate(ad::Tape& t, ad::Var x, int channels);

// Per channel the scalar coefficient and the squared spatial vector norm,
// giving rows of 2 * channels rotation invariants.
ad::Var mv_invariants(ad::Tape& t, ad::Var x, int channels);

// Adds s (rows x channels) to the scalar coefficient of each channel.
ad::Var add_to_scalar_parts(ad::Tape& t, ad::Var x, ad::Var s, int channels);

// Rows x 3 points to single-channel-0 tokens: scalar 1 plus e1..e3 = p.
ad::Var points_to_mv(ad::Tape& t, ad::Var points, int channels);

// 1 on the blades free of e4, 0 elsewhere, tiled over channels.
ad::Tensor invariant_mask(int rows, int channels);

}  // namespace rfsplat::tokenizer
