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

#include <Eigen/Core>

#include "rfsplat/autodiff/tape.hpp"

namespace rfsplat::tokenizer {

// [sin(2^f pi p_i / scale), cos(2^f pi p_i / scale)] with entry
// (f * 3 + i) * 2 holding the sine; length 6F.
std::vector<double> embed_euclidean(const Eigen::Vector3d& p, int frequencies, double scale);

// Row-wise embedding of an n x 3 tensor into n x 6F, differentiable in the
// positions. Throws std::invalid_argument for F < 1 or scale <= 0.
ad::Var embed_euclidean(ad::Tape& tape, ad::Var positions, int frequencies, double scale);

}  // namespace rfsplat::tokenizer
