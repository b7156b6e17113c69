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

#include "rfsplat/mapping/mapping_net.hpp"

#include <cmath>
#include <stdexcept>

#include "rfsplat/autodiff/ops.hpp"

namespace rfsplat::mapping {
namespace {

ad::Tensor uniform(std::mt19937_64& rng, int rows, int cols, int fan_in) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  std::uniform_real_distribution<double> u(-bound, bound);
  ad::Tensor out(rows, cols);
  for (double& v : out.data) v = u(rng);
  return out;
}

// widths: input, hidden..., output.
MlpLayout add_mlp(ad::ParameterSet& params, const std::string& prefix, std::span<const int> widths,
                  int skip, bool zero_output, std::mt19937_64& rng) {
  MlpLayout m;
  m.skip = skip;
  const int layers = static_cast<int>(widths.size()) - 1;
  for (int k = 0; k < layers; ++k) {
    int in = widths[static_cast<std::size_t>(k)];
    if (skip > 0 && k == skip - 1 && k > 0) in += widths[0];
    const int out = widths[static_cast<std::size_t>(k + 1)];
    const std::string p = prefix + std::to_string(k) + ".";
    const bool last = k == layers - 1;
    m.weights.push_back(params.add(p + "w", last && zero_output ? ad::Tensor(in, out)
                                                                : uniform(rng, in, out, in)));
    m.biases.push_back(params.add(p + "b", last && zero_output ? ad::Tensor(1, out)
                                                               : uniform(rng, 1, out, in)));
  }
  return m;
}

ad::Var conditioning(ad::Tape& t, ad::Var e_tx, ad::Var e_x, ad::Var cls, int expect_embed,
                     int expect_cls) {
  const auto& ex = t.value(e_x);
  const auto& et = t.value(e_tx);
  const auto& c = t.value(cls);
  if (ex.cols != expect_embed || et.rows != 1 || et.cols != expect_embed || c.rows != 1 ||
      c.cols != expect_cls) {
    throw std::invalid_argument("mapping inputs do not match the configured widths");
  }
  const int n = ex.rows;
  const ad::Var parts[] = {ad::broadcast_rows(t, e_tx, n), e_x, ad::broadcast_rows(t, cls, n)};
  return ad::concat_cols(t, parts);
}

}  // namespace

void MappingConfig::validate() const {
  if (embedding <= 0 || cls <= 0 || signal <= 0 || att_width <= 0 || att_layers <= 0 ||
      sig_width <= 0 || sig_layers <= 0 || head_width <= 0) {
    throw std::invalid_argument("mapping widths must be positive");
  }
  if (att_skip < 0 || att_skip > att_layers) {
    throw std::invalid_argument("attenuation skip layer out of range");
  }
}

MappingLayout add_mapping_params(ad::ParameterSet& params, const MappingConfig& cfg,
                                 std::mt19937_64& rng) {
  cfg.validate();
  MappingLayout l;
  std::vector<int> att{cfg.att_input()};
  for (int k = 0; k < cfg.att_layers; ++k) att.push_back(cfg.att_width);
  att.push_back(1);
  l.attenuation = add_mlp(params, "mapping.att.", att, cfg.att_skip, false, rng);
  std::vector<int> sig{cfg.sig_input()};
  for (int k = 0; k < cfg.sig_layers; ++k) sig.push_back(cfg.sig_width);
  sig.push_back(cfg.signal);
  l.signal = add_mlp(params, "mapping.sig.", sig, 0, false, rng);
  const int rot[] = {cfg.head_input(), cfg.head_width, 4};
  const int scl[] = {cfg.head_input(), cfg.head_width, 3};
  const int shd[] = {cfg.head_input(), cfg.head_width, cfg.signal};
  l.rotation = add_mlp(params, "mapping.rotation.", rot, 0, true, rng);
  l.scaling = add_mlp(params, "mapping.scaling.", scl, 0, true, rng);
  l.signal_head = add_mlp(params, "mapping.signal_head.", shd, 0, true, rng);
  l.attn_w = params.add("mapping.attn.w", ad::Tensor(cfg.att_width, 1));
  l.attn_b = params.add("mapping.attn.b", ad::Tensor(1, 1));
  return l;
}

ad::Var mlp_forward(ad::Tape& t, std::span<const ad::Var> bound, const MlpLayout& mlp, ad::Var x,
                    ad::Var* hidden) {
  const std::size_t layers = mlp.weights.size();
  ad::Var h = x;
  for (std::size_t k = 0; k < layers; ++k) {
    ad::Var in = h;
    if (mlp.skip > 0 && k + 1 == static_cast<std::size_t>(mlp.skip) && k > 0) {
      const ad::Var parts[] = {h, x};
      in = ad::concat_cols(t, parts);
    }
    const ad::Var w = bound[static_cast<std::size_t>(mlp.weights[k])];
    const ad::Var b = bound[static_cast<std::size_t>(mlp.biases[k])];
    if (t.value(in).cols != t.value(w).rows) {
      throw std::invalid_argument("mlp input width does not match its first layer");
    }
    h = ad::linear(t, in, w, b);
    if (k + 1 < layers) {
      h = ad::silu(t, h);
      if (hidden && k + 2 == layers) *hidden = h;
    }
  }
  return h;
}

Attenuation attenuation_forward(ad::Tape& t, std::span<const ad::Var> bound,
                                const MappingLayout& layout, const MappingConfig& cfg,
                                ad::Var e_tx, ad::Var e_x, ad::Var cls) {
  const ad::Var x = conditioning(t, e_tx, e_x, cls, cfg.embedding, cfg.cls);
  Attenuation a;
  const ad::Var raw = mlp_forward(t, bound, layout.attenuation, x, &a.f);
  a.delta = ad::sigmoid(t, raw);
  return a;
}

ad::Var signal_forward(ad::Tape& t, std::span<const ad::Var> bound, const MappingLayout& layout,
                       const MappingConfig& cfg, ad::Var f, ad::Var e_tx, ad::Var e_x,
                       ad::Var cls) {
  const ad::Var c = conditioning(t, e_tx, e_x, cls, cfg.embedding, cfg.cls);
  const auto& fv = t.value(f);
  if (fv.cols != cfg.att_width || fv.rows != t.value(e_x).rows) {
    throw std::invalid_argument("geometric feature does not match the configured width");
  }
  const ad::Var parts[] = {f, c};
  return mlp_forward(t, bound, layout.signal, ad::concat_cols(t, parts));
}

Residuals heads_forward(ad::Tape& t, std::span<const ad::Var> bound, const MappingLayout& layout,
                        const MappingConfig& cfg, ad::Var f, ad::Var xi) {
  const auto& fv = t.value(f);
  const auto& xv = t.value(xi);
  if (fv.cols != cfg.att_width || xv.cols != cfg.signal || fv.rows != xv.rows) {
    throw std::invalid_argument("head inputs do not match the configured widths");
  }
  const ad::Var parts[] = {f, xi};
  const ad::Var x = ad::concat_cols(t, parts);
  Residuals r;
  r.d_rotation = mlp_forward(t, bound, layout.rotation, x);
  r.d_scaling = mlp_forward(t, bound, layout.scaling, x);
  r.d_signal = mlp_forward(t, bound, layout.signal_head, x);
  r.d_attn = ad::linear(t, f, bound[static_cast<std::size_t>(layout.attn_w)],
                        bound[static_cast<std::size_t>(layout.attn_b)]);
  return r;
}

FieldVars map_fields(ad::Tape& t, std::span<const ad::Var> bound, const MappingLayout& layout,
                     const MappingConfig& cfg, ad::Var e_tx, ad::Var e_x, ad::Var cls) {
  FieldVars out;
  const Attenuation a = attenuation_forward(t, bound, layout, cfg, e_tx, e_x, cls);
  out.delta = a.delta;
  out.f = a.f;
  out.xi = signal_forward(t, bound, layout, cfg, a.f, e_tx, e_x, cls);
  out.residuals = heads_forward(t, bound, layout, cfg, a.f, out.xi);
  return out;
}

FieldOutputs map_fields(const tokenizer::MultiViewOutput& encoded, const ad::ParameterSet& params,
                        const MappingLayout& layout, const MappingConfig& cfg) {
  const int n = static_cast<int>(encoded.e_x.size());
  if (n == 0) throw std::invalid_argument("no primitives to map");
  ad::Tensor ex(n, cfg.embedding);
  for (int i = 0; i < n; ++i) {
    const auto& row = encoded.e_x[static_cast<std::size_t>(i)];
    if (static_cast<int>(row.size()) != cfg.embedding) {
      throw std::invalid_argument("embedding width does not match the mapping config");
    }
    for (int k = 0; k < cfg.embedding; ++k) ex(i, k) = row[static_cast<std::size_t>(k)];
  }
  ad::Tape t;
  const auto bound = params.bind(t, false);
  const ad::Var e_tx = t.constant(ad::Tensor(1, static_cast<int>(encoded.e_tx.size()), encoded.e_tx));
  const ad::Var cls = t.constant(ad::Tensor(1, static_cast<int>(encoded.cls.size()), encoded.cls));
  const FieldVars v = map_fields(t, bound, layout, cfg, e_tx, t.constant(ex), cls);
  FieldOutputs out;
  out.delta = t.value(v.delta).map().col(0);
  out.f = t.value(v.f).map();
  out.xi = t.value(v.xi).map();
  out.residuals.d_rotation = t.value(v.residuals.d_rotation).map();
  out.residuals.d_scaling = t.value(v.residuals.d_scaling).map();
  out.residuals.d_signal = t.value(v.residuals.d_signal).map();
  out.residuals.d_attn = t.value(v.residuals.d_attn).map().col(0);
  return out;
}

}  // namespace rfsplat::mapping
