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

#include "rfsplat/tokenizer/encoder.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rfsplat/autodiff/ops.hpp"
#include "rfsplat/tokenizer/embedding.hpp"
#include "rfsplat/tokenizer/ga_layers.hpp"

namespace rfsplat::tokenizer {
namespace {

constexpr int kB = ga::kBladeCount;

ad::Tensor uniform(std::mt19937_64& rng, int rows, int cols, int fan_in) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  std::uniform_real_distribution<double> u(-bound, bound);
  ad::Tensor t(rows, cols);
  for (double& x : t.data) x = u(rng);
  return t;
}

ad::Var at(std::span<const ad::Var> bound, int slot) {
  if (slot < 0 || static_cast<std::size_t>(slot) >= bound.size()) {
    throw std::invalid_argument("encoder parameters are not bound");
  }
  return bound[static_cast<std::size_t>(slot)];
}

}  // namespace

void EncoderConfig::validate() const {
  if (blocks < 0 || channels < 1 || aux < 3 || frequencies < 1 || !(embed_scale > 0.0)) {
    throw std::invalid_argument("invalid encoder configuration");
  }
}

EncoderLayout add_encoder_params(ad::ParameterSet& params, const EncoderConfig& cfg,
                                 std::mt19937_64& rng) {
  cfg.validate();
  const int c = cfg.channels, s = cfg.aux;
  EncoderLayout l;
  l.cls_mv = params.add("encoder.cls_mv", ad::Tensor(1, c, 1.0));
  l.cls_aux = params.add("encoder.cls_aux", ad::Tensor(1, s, 0.0));
  for (int b = 0; b < cfg.blocks; ++b) {
    const std::string p = "encoder.block" + std::to_string(b) + ".";
    EncoderLayout::Block k{};
    k.wq = params.add(p + "wq", uniform(rng, kBasisMaps, c * c, c));
    k.wk = params.add(p + "wk", uniform(rng, kBasisMaps, c * c, c));
    k.wv = params.add(p + "wv", uniform(rng, kBasisMaps, c * c, c));
    k.wva = params.add(p + "wva", uniform(rng, s, s, s));
    k.wmv = params.add(p + "wmv", uniform(rng, kBasisMaps, c * c, c));
    k.wsa = params.add(p + "wsa", uniform(rng, s, c, s));
    k.wms = params.add(p + "wms", uniform(rng, 2 * c, s, 2 * c + s));
    k.wss = params.add(p + "wss", uniform(rng, s, s, 2 * c + s));
    k.bmv = params.add(p + "bmv", ad::Tensor(1, c, 0.0));
    k.bs = params.add(p + "bs", ad::Tensor(1, s, 0.0));
    l.blocks.push_back(k);
  }
  return l;
}

TokenBatch tokenize_anchors(ad::Tape& t, std::span<const ad::Var> bound,
                            const EncoderLayout& layout, const EncoderConfig& cfg,
                            ad::Var positions, ad::Var opacities, std::span<const int> anchors,
                            const Eigen::Vector3d& tx) {
  cfg.validate();
  if (anchors.empty()) throw std::invalid_argument("tokenizer needs at least one anchor");
  const int m = static_cast<int>(anchors.size());
  const int c = cfg.channels;

  const ad::Var anchor_pos = ad::gather_rows(t, positions, anchors);
  const ad::Var tx_pos = t.constant(ad::Tensor(1, 3, {tx.x(), tx.y(), tx.z()}));
  const ad::Var pts[] = {anchor_pos, tx_pos};
  const ad::Var body_mv = points_to_mv(t, ad::concat_rows(t, pts), c);
  const ad::Var cls_mv = add_to_scalar_parts(t, t.constant(ad::Tensor(1, c * kB)),
                                             at(bound, layout.cls_mv), c);
  const ad::Var mv_rows[] = {cls_mv, body_mv};

  const ad::Var anchor_op = ad::gather_rows(t, opacities, anchors);
  const ad::Var op_rows[] = {anchor_op, t.constant(ad::Tensor(1, 1))};
  ad::Tensor flags(m + 1, cfg.aux - 1);
  for (int r = 0; r < m; ++r) flags(r, 1) = 1.0;
  flags(m, 0) = 1.0;
  const ad::Var aux_cols[] = {ad::concat_rows(t, op_rows), t.constant(std::move(flags))};
  const ad::Var aux_rows[] = {at(bound, layout.cls_aux), ad::concat_cols(t, aux_cols)};

  return {ad::concat_rows(t, mv_rows), ad::concat_rows(t, aux_rows)};
}

TokenBatch ga_attention(ad::Tape& t, ad::Var q_mv, ad::Var k_mv, const TokenBatch& v,
                        int channels) {
  const ad::Tensor& q = t.value(q_mv);
  const ad::Tensor& k = t.value(k_mv);
  if (q.cols != channels * kB || k.cols != q.cols || t.value(v.mv).cols != q.cols) {
    throw std::invalid_argument("ga_attention: channel count mismatch");
  }
  if (k.rows != t.value(v.mv).rows || k.rows != t.value(v.aux).rows) {
    throw std::invalid_argument("ga_attention: key and value lengths differ");
  }
  const ad::Var mask = t.constant(invariant_mask(q.rows, channels));
  const ad::Var logits = ad::matmul(t, ad::mul(t, q_mv, mask), ad::transpose(t, k_mv));
  const ad::Var weights =
      ad::softmax_rows(t, ad::scale(t, logits, 1.0 / std::sqrt(double(kInvariantBlades * channels))));
  return {ad::matmul(t, weights, v.mv), ad::matmul(t, weights, v.aux)};
}

EncoderOutput encode(ad::Tape& t, std::span<const ad::Var> bound, const EncoderLayout& layout,
                     const EncoderConfig& cfg, ad::Var positions, ad::Var opacities,
                     std::span<const int> anchors, const Eigen::Vector3d& tx) {
  const int c = cfg.channels;
  const auto& sig = cfg.signature;
  TokenBatch x = tokenize_anchors(t, bound, layout, cfg, positions, opacities, anchors, tx);
  for (const auto& b : layout.blocks) {
    const ad::Var q = mv_linear(t, x.mv, at(bound, b.wq), c, c, sig);
    const ad::Var k = mv_linear(t, x.mv, at(bound, b.wk), c, c, sig);
    const TokenBatch v{mv_linear(t, x.mv, at(bound, b.wv), c, c, sig),
                       ad::matmul(t, x.aux, at(bound, b.wva))};
    const TokenBatch a = ga_attention(t, q, k, v, c);
    x = {ad::add(t, x.mv, a.mv), ad::add(t, x.aux, a.aux)};

    const ad::Var inv = mv_invariants(t, x.mv, c);
    const ad::Var to_scalar = ad::add_row(t, ad::matmul(t, x.aux, at(bound, b.wsa)), at(bound, b.bmv));
    const ad::Var h_mv =
        add_to_scalar_parts(t, mv_linear(t, x.mv, at(bound, b.wmv), c, c, sig), to_scalar, c);
    const ad::Var h_aux = ad::add_row(
        t, ad::add(t, ad::matmul(t, x.aux, at(bound, b.wss)), ad::matmul(t, inv, at(bound, b.wms))),
        at(bound, b.bs));
    x = {ad::add(t, x.mv, mv_gate(t, h_mv, c)), ad::add(t, x.aux, ad::silu(t, h_aux))};
  }
  const int first[] = {0};
  const ad::Var parts[] = {mv_invariants(t, ad::gather_rows(t, x.mv, first), c),
                           ad::gather_rows(t, x.aux, first)};
  return {ad::concat_cols(t, parts), x};
}

std::vector<Token> to_tokens(const ad::Tensor& mv, const ad::Tensor& aux, int channels,
                             const ga::Signature& sig) {
  if (mv.cols != channels * kB || aux.rows != mv.rows) {
    throw std::invalid_argument("token tensors have inconsistent shapes");
  }
  std::vector<Token> out(static_cast<std::size_t>(mv.rows));
  for (int r = 0; r < mv.rows; ++r) {
    auto& tok = out[static_cast<std::size_t>(r)];
    for (int c = 0; c < channels; ++c) {
      ga::Multivector m(sig);
      for (int j = 0; j < kB; ++j) m[j] = mv(r, c * kB + j);
      tok.mv.push_back(m);
    }
    for (int j = 0; j < aux.cols; ++j) tok.aux.push_back(aux(r, j));
  }
  return out;
}

ad::Tensor mv_tensor(std::span<const Token> tokens) {
  if (tokens.empty()) throw std::invalid_argument("no tokens");
  const int c = static_cast<int>(tokens[0].mv.size());
  ad::Tensor out(static_cast<int>(tokens.size()), c * kB);
  for (std::size_t r = 0; r < tokens.size(); ++r) {
    if (static_cast<int>(tokens[r].mv.size()) != c) throw std::invalid_argument("ragged tokens");
    for (int ch = 0; ch < c; ++ch) {
      for (int j = 0; j < kB; ++j) out(static_cast<int>(r), ch * kB + j) = tokens[r].mv[static_cast<std::size_t>(ch)][j];
    }
  }
  return out;
}

ad::Tensor aux_tensor(std::span<const Token> tokens) {
  if (tokens.empty()) throw std::invalid_argument("no tokens");
  const int s = static_cast<int>(tokens[0].aux.size());
  ad::Tensor out(static_cast<int>(tokens.size()), s);
  for (std::size_t r = 0; r < tokens.size(); ++r) {
    if (static_cast<int>(tokens[r].aux.size()) != s) throw std::invalid_argument("ragged tokens");
    for (int j = 0; j < s; ++j) out(static_cast<int>(r), j) = tokens[r].aux[static_cast<std::size_t>(j)];
  }
  return out;
}

namespace {

struct SceneTensors {
  ad::Tensor positions, opacities;
};

SceneTensors scene_tensors(const scene::Scene& scene) {
  SceneTensors s{ad::Tensor(scene.size(), 3), ad::Tensor(scene.size(), 1)};
  for (int i = 0; i < scene.size(); ++i) {
    const auto& p = scene.primitives[static_cast<std::size_t>(i)];
    for (int a = 0; a < 3; ++a) s.positions(i, a) = p.position[a];
    s.opacities(i, 0) = p.opacity;
  }
  return s;
}

}  // namespace

std::vector<Token> tokenize_anchors(const scene::Scene& scene, std::span<const int> anchors,
                                    const ad::ParameterSet& params, const EncoderLayout& layout,
                                    const EncoderConfig& cfg) {
  ad::Tape t;
  const auto bound = params.bind(t, false);
  auto st = scene_tensors(scene);
  const auto batch = tokenize_anchors(t, bound, layout, cfg, t.constant(std::move(st.positions)),
                                      t.constant(std::move(st.opacities)), anchors,
                                      scene.tx_position);
  return to_tokens(t.value(batch.mv), t.value(batch.aux), cfg.channels, cfg.signature);
}

std::vector<Token> ga_attention(std::span<const Token> q, std::span<const Token> k,
                                std::span<const Token> v) {
  if (q.empty() || k.size() != v.size() || k.empty()) {
    throw std::invalid_argument("ga_attention: key and value lengths differ");
  }
  const int c = static_cast<int>(q[0].mv.size());
  ad::Tape t;
  const TokenBatch vb{t.constant(mv_tensor(v)), t.constant(aux_tensor(v))};
  const auto out = ga_attention(t, t.constant(mv_tensor(q)), t.constant(mv_tensor(k)), vb, c);
  return to_tokens(t.value(out.mv), t.value(out.aux), c, q[0].mv[0].signature());
}

MultiViewOutput encode(const scene::Scene& scene, const ad::ParameterSet& params,
                       const EncoderLayout& layout, const EncoderConfig& cfg) {
  scene.validate();
  const auto anchors = scene::select_anchors(scene, scene.anchor_count);
  ad::Tape t;
  const auto bound = params.bind(t, false);
  auto st = scene_tensors(scene);
  const ad::Var pos = t.constant(st.positions);
  const auto out = encode(t, bound, layout, cfg, pos, t.constant(std::move(st.opacities)),
                          anchors, scene.tx_position);
  MultiViewOutput mv;
  mv.cls = t.value(out.cls).data;
  const ad::Tensor& ex = t.value(embed_euclidean(t, pos, cfg.frequencies, cfg.embed_scale));
  for (int r = 0; r < ex.rows; ++r) {
    mv.e_x.emplace_back(ex.data.begin() + static_cast<std::ptrdiff_t>(r) * ex.cols,
                        ex.data.begin() + static_cast<std::ptrdiff_t>(r + 1) * ex.cols);
  }
  mv.e_tx = embed_euclidean(scene.tx_position, cfg.frequencies, cfg.embed_scale);
  mv.tokens = to_tokens(t.value(out.tokens.mv), t.value(out.tokens.aux), cfg.channels, cfg.signature);
  return mv;
}

}  // namespace rfsplat::tokenizer
