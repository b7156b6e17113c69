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
#include <vector>

#include <Eigen/Core>

#include "rfsplat/autodiff/params.hpp"
#include "rfsplat/autodiff/tape.hpp"
#include "rfsplat/ga/multivector.hpp"
#include "rfsplat/scene/scene.hpp"

namespace rfsplat::tokenizer {

struct EncoderConfig {
  int blocks = 2;
  int channels = 8;      // multivector channels per token
  int aux = 16;          // scalar channels per token, at least 3
  int frequencies = 6;   // Euclidean embedding frequencies
  double embed_scale = 8.0;
  ga::Signature signature;

  int feature_size() const { return 2 * channels + aux; }
  int embedding_size() const { return 6 * frequencies; }
  // Throws std::invalid_argument for non-positive sizes or aux < 3.
  void validate() const;
};

struct Token {
  std::vector<ga::Multivector> mv;
  std::vector<double> aux;
};

// Slots of the encoder tensors inside a ParameterSet.
struct EncoderLayout {
  struct Block {
    int wq, wk, wv, wva;        // attention
    int wmv, wsa, wms, wss;     // equivariant feed-forward
    int bmv, bs;
  };
  int cls_mv = -1;   // 1 x channels, scalar coefficient per channel
  int cls_aux = -1;  // 1 x aux
  std::vector<Block> blocks;
};

// Registers the encoder tensors under the "encoder." prefix. Weights are
// uniform in +-1/sqrt(fan_in); the CLS token starts at scalar 1, aux 0.
EncoderLayout add_encoder_params(ad::ParameterSet& params, const EncoderConfig& cfg,
                                 std::mt19937_64& rng);

// Token tensors: mv is T x (channels * 16), aux is T x aux.
struct TokenBatch {
  ad::Var mv;
  ad::Var aux;
};

// CLS first, then one token per anchor in the given order, then TX. Anchor
// and TX tokens carry their position in the e1..e3 coefficients of channel 0
// (with scalar 1); their aux slots hold opacity, a TX flag and an anchor flag.
// positions: N x 3, opacities: N x 1. Throws std::invalid_argument for an
// empty or out-of-range anchor list.
TokenBatch tokenize_anchors(ad::Tape& t, std::span<const ad::Var> bound,
                            const EncoderLayout& layout, const EncoderConfig& cfg,
                            ad::Var positions, ad::Var opacities, std::span<const int> anchors,
                            const Eigen::Vector3d& tx);

// Single-head attention with logits <q_i', k_i> / sqrt(8 n_c) over the e4-free
// blades; values carry both multivector and aux channels. q and k need only
// their mv tensors. Throws std::invalid_argument on length mismatch.
TokenBatch ga_attention(ad::Tape& t, ad::Var q_mv, ad::Var k_mv, const TokenBatch& v,
                        int channels);

struct EncoderOutput {
  ad::Var cls;  // 1 x feature_size: CLS invariants then CLS aux
  TokenBatch tokens;
};

EncoderOutput encode(ad::Tape& t, std::span<const ad::Var> bound, const EncoderLayout& layout,
                     const EncoderConfig& cfg, ad::Var positions, ad::Var opacities,
                     std::span<const int> anchors, const Eigen::Vector3d& tx);

// Plain-value helpers.
std::vector<Token> to_tokens(const ad::Tensor& mv, const ad::Tensor& aux, int channels,
                             const ga::Signature& sig = {});
ad::Tensor mv_tensor(std::span<const Token> tokens);
ad::Tensor aux_tensor(std::span<const Token> tokens);

std::vector<Token> tokenize_anchors(const scene::Scene& scene, std::span<const int> anchors,
                                    const ad::ParameterSet& params, const EncoderLayout& layout,
                                    const EncoderConfig& cfg);
std::vector<Token> ga_attention(std::span<const Token> q, std::span<const Token> k,
                                std::span<const Token> v);

struct MultiViewOutput {
  std::vector<double> cls;                // shared by every primitive
  std::vector<std::vector<double>> e_x;   // one embedding per primitive
  std::vector<double> e_tx;
  std::vector<Token> tokens;              // final token states
};

// Runs the encoder on the scene's current top-M anchors.
MultiViewOutput encode(const scene::Scene& scene, const ad::ParameterSet& params,
                       const EncoderLayout& layout, const EncoderConfig& cfg);

}  // namespace rfsplat::tokenizer
