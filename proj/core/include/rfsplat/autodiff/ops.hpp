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

// Differentiable building blocks. Every op validates shapes and throws
// std::invalid_argument on mismatch.
namespace rfsplat::ad {

Var matmul(Tape& t, Var a, Var b);
Var add(Tape& t, Var a, Var b);
Var sub(Tape& t, Var a, Var b);
Var mul(Tape& t, Var a, Var b);
// a [n x m] + row [1 x m] broadcast over rows.
Var add_row(Tape& t, Var a, Var row);
// x W + b for x [n x in], W [in x out], b [1 x out].
Var linear(Tape& t, Var x, Var weight, Var bias);
Var scale(Tape& t, Var a, double s);
Var add_scalar(Tape& t, Var a, double s);

Var sigmoid(Tape& t, Var a);
Var tanh(Tape& t, Var a);
Var silu(Tape& t, Var a);
Var exp(Tape& t, Var a);
Var square(Tape& t, Var a);
// Elementwise clamp; gradient passes only where lo < a < hi.
Var clamp(Tape& t, Var a, double lo, double hi);

// Sum / mean of all entries as a 1x1 value.
Var sum(Tape& t, Var a);
Var mean(Tape& t, Var a);
// Mean |a - b| over all entries (1x1).
Var mean_abs_diff(Tape& t, Var a, Var b);

// Row-wise softmax.
Var softmax_rows(Tape& t, Var a);
// Scales each row to unit Euclidean norm. Throws std::domain_error on a zero row.
Var normalize_rows(Tape& t, Var a);

Var concat_cols(Tape& t, std::span<const Var> parts);
Var concat_rows(Tape& t, std::span<const Var> parts);
Var transpose(Tape& t, Var a);
Var slice_cols(Tape& t, Var a, int start, int count);
Var gather_rows(Tape& t, Var a, std::span<const int> rows);
// Repeats a [1 x m] row n times.
Var broadcast_rows(Tape& t, Var row, int n);
Var reshape(Tape& t, Var a, int rows, int cols);

}  // namespace rfsplat::ad
