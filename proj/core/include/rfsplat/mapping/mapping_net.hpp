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

#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rfsplat/autodiff/params.hpp"
#include "rfsplat/autodiff/tape.hpp"
#include "rfsplat/scene/scene.hpp"
#include "rfsplat/tokenizer/encoder.hpp"

namespace rfsplat::mapping {

struct MappingConfig {
  int embedding = 36;     // per-position embedding width (e_x and e_tx)
  int cls = 32;           // CLS feature width
  int signal = 18;        // SH-shaped output width
  int att_width = 128;
  int att_layers = 4;
  int att_skip = 3;       // hidden layer that also sees the raw input (1-based, 0 = none)
  int sig_width = 128;
  int sig_layers = 3;
  int head_width = 64;

  int att_input() const { return 2 * embedding + cls; }
  int sig_input() const { return att_width + 2 * embedding + cls; }
  int head_input() const { return att_width + signal; }
  // Throws std::invalid_argument for non-positive widths or a skip index
  // outside 0..att_layers.
  void validate() const;
};

// Slots of one dense stack: hidden layers with SiLU, then a linear output
// layer. skip > 0 marks the hidden layer whose input is [h, x].
struct MlpLayout {
  std::vector<int> weights;  // in x out
  std::vector<int> biases;   // 1 x out
  int skip = 0;
};

struct MappingLayout {
  MlpLayout attenuation;  // -> 1 raw logit, last hidden layer is f
  MlpLayout signal;       // -> xi
  MlpLayout rotation;     // -> 4
  MlpLayout scaling;      // -> 3
  MlpLayout signal_head;  // -> signal
  int attn_w = -1;        // f -> d_attn
  int attn_b = -1;
};

// Registers the mapping tensors under "mapping.". Hidden and field layers
// are uniform in +-1/sqrt(fan_in); the last layer of every residual head and
// the d_attn projection start at zero.
MappingLayout add_mapping_params(ad::ParameterSet& params, const MappingConfig& cfg,
                                 std::mt19937_64& rng);

// Runs a stack; when `hidden` is non-null it receives the last hidden
// activation.
ad::Var mlp_forward(ad::Tape& t, std::span<const ad::Var> bound, const MlpLayout& mlp, ad::Var x,
                    ad::Var* hidden = nullptr);

struct Attenuation {
  ad::Var delta;  // N x 1, sigmoid of the raw output
  ad::Var f;      // N x att_width
};

// Per-primitive input rows are [e_tx, e_x, cls]. e_tx and cls are single
// rows shared by every primitive, e_x is N x embedding.
Attenuation attenuation_forward(ad::Tape& t, std::span<const ad::Var> bound,
                                const MappingLayout& layout, const MappingConfig& cfg,
                                ad::Var e_tx, ad::Var e_x, ad::Var cls);
// Conditioned on [f, e_tx, e_x, cls].
ad::Var signal_forward(ad::Tape& t, std::span<const ad::Var> bound, const MappingLayout& layout,
                       const MappingConfig& cfg, ad::Var f, ad::Var e_tx, ad::Var e_x,
                       ad::Var cls);

struct Residuals {
  ad::Var d_rotation;  // N x 4
  ad::Var d_scaling;   // N x 3
  ad::Var d_signal;    // N x signal
  ad::Var d_attn;      // N x 1, from f alone
};

Residuals heads_forward(ad::Tape& t, std::span<const ad::Var> bound, const MappingLayout& layout,
                        const MappingConfig& cfg, ad::Var f, ad::Var xi);

struct FieldVars {
  ad::Var delta, f, xi;
  Residuals residuals;
};

FieldVars map_fields(ad::Tape& t, std::span<const ad::Var> bound, const MappingLayout& layout,
                     const MappingConfig& cfg, ad::Var e_tx, ad::Var e_x, ad::Var cls);

// Plain-value result for a whole scene.
struct FieldOutputs {
  Eigen::VectorXd delta;
  ad::RowMatrix f;
  ad::RowMatrix xi;
  scene::ResidualUpdate residuals;
};

FieldOutputs map_fields(const tokenizer::MultiViewOutput& encoded, const ad::ParameterSet& params,
                        const MappingLayout& layout, const MappingConfig& cfg);

}  // namespace rfsplat::mapping
