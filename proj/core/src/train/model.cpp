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

#include "rfsplat/train/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "rfsplat/autodiff/ops.hpp"
#include "rfsplat/errors.hpp"
#include "rfsplat/tokenizer/embedding.hpp"

namespace rfsplat::train {

void ModelConfig::sync() {
  mapping.embedding = encoder.embedding_size();
  mapping.cls = encoder.feature_size();
  mapping.signal = scene::signal_size(sh_degree);
}

void ModelConfig::validate() const {
  encoder.validate();
  mapping.validate();
  if (anchors < 1) throw std::invalid_argument("anchor count must be positive");
  if (sh_degree < 0 || sh_degree > 2) throw std::invalid_argument("sh degree must lie in 0..2");
  if (mapping.embedding != encoder.embedding_size() || mapping.cls != encoder.feature_size() ||
      mapping.signal != scene::signal_size(sh_degree)) {
    throw std::invalid_argument("mapping widths are out of sync with the encoder");
  }
}

Model Model::create(const scene::Scene& init, ModelConfig config, std::uint64_t seed) {
  config.sync();
  config.validate();
  if (init.sh_degree != config.sh_degree) throw std::invalid_argument("scene and model SH degrees differ");
  init.validate();
  Model m;
  m.config = config;
  m.tx = init.tx_position;
  const int n = init.size(), s = scene::signal_size(config.sh_degree);
  ad::Tensor pos(n, 3), rot(n, 4), ls(n, 3), op(n, 1), sig(n, s);
  for (int i = 0; i < n; ++i) {
    const auto& p = init.primitives[static_cast<std::size_t>(i)];
    for (int k = 0; k < 3; ++k) {
      pos(i, k) = p.position[k];
      ls(i, k) = p.log_scale[k];
    }
    for (int k = 0; k < 4; ++k) rot(i, k) = p.rotation[k];
    op(i, 0) = p.opacity;
    for (int k = 0; k < s; ++k) sig(i, k) = p.signal[static_cast<std::size_t>(k)];
  }
  m.scene_slots.position = m.params.add("scene.position", pos);
  m.scene_slots.rotation = m.params.add("scene.rotation", rot);
  m.scene_slots.log_scale = m.params.add("scene.log_scale", ls);
  m.scene_slots.opacity = m.params.add("scene.opacity", op);
  m.scene_slots.signal = m.params.add("scene.signal", sig);
  std::mt19937_64 rng(seed);
  m.encoder = tokenizer::add_encoder_params(m.params, config.encoder, rng);
  m.mapping = mapping::add_mapping_params(m.params, config.mapping, rng);
  return m;
}

Model Model::restore(ModelConfig config, const Eigen::Vector3d& tx, int primitives,
                     const ad::ParameterSet& saved) {
  if (primitives < 1) throw FormatError("checkpoint holds no primitives");
  scene::Scene placeholder;
  placeholder.sh_degree = config.sh_degree;
  placeholder.tx_position = tx;
  placeholder.primitives.resize(static_cast<std::size_t>(primitives));
  for (auto& p : placeholder.primitives) p.signal.assign(static_cast<std::size_t>(scene::signal_size(config.sh_degree)), 0.0);
  Model m = create(placeholder, config, 0);
  if (saved.size() != m.params.size()) throw FormatError("checkpoint parameter count does not match the model");
  for (int s = 0; s < m.params.size(); ++s) {
    if (saved.name(s) != m.params.name(s) || !saved[s].same_shape(m.params[s])) {
      throw FormatError("checkpoint tensor '" + saved.name(s) + "' does not match the model layout");
    }
    m.params[s] = saved[s];
  }
  return m;
}

scene::Scene Model::scene() const {
  scene::Scene s;
  s.sh_degree = config.sh_degree;
  s.tx_position = tx;
  const int n = primitives(), sig = scene::signal_size(config.sh_degree);
  s.anchor_count = std::min(config.anchors, n);
  const auto& pos = params[scene_slots.position];
  const auto& rot = params[scene_slots.rotation];
  const auto& ls = params[scene_slots.log_scale];
  const auto& op = params[scene_slots.opacity];
  const auto& sg = params[scene_slots.signal];
  for (int i = 0; i < n; ++i) {
    scene::GaussianPrimitive p;
    p.position = Eigen::Vector3d(pos(i, 0), pos(i, 1), pos(i, 2));
    p.rotation = Eigen::Vector4d(rot(i, 0), rot(i, 1), rot(i, 2), rot(i, 3)).normalized();
    p.log_scale = Eigen::Vector3d(ls(i, 0), ls(i, 1), ls(i, 2));
    p.opacity = std::clamp(op(i, 0), 0.0, 1.0);
    p.signal.assign(sg.data.begin() + static_cast<std::ptrdiff_t>(i) * sig,
                    sg.data.begin() + static_cast<std::ptrdiff_t>(i + 1) * sig);
    s.primitives.push_back(std::move(p));
  }
  return s;
}

void Model::project_constraints() {
  for (double& o : params[scene_slots.opacity].data) o = std::clamp(o, 0.0, 1.0);
  auto& rot = params[scene_slots.rotation];
  for (int i = 0; i < rot.rows; ++i) {
    double n = 0.0;
    for (int k = 0; k < 4; ++k) n += rot(i, k) * rot(i, k);
    n = std::sqrt(n);
    if (n > 0.0) {
      for (int k = 0; k < 4; ++k) rot(i, k) /= n;
    } else {
      rot(i, 0) = 1.0;
    }
  }
}

ForwardPass forward(ad::Tape& t, const Model& model, bool trainable) {
  const auto& cfg = model.config;
  ForwardPass f;
  f.bound = model.params.bind(t, trainable);
  const auto slot = [&](int s) { return f.bound[static_cast<std::size_t>(s)]; };
  const ad::Var pos = slot(model.scene_slots.position);
  const ad::Var op = slot(model.scene_slots.opacity);

  const auto& opv = t.value(op).data;
  std::vector<double> clamped(opv.size());
  std::transform(opv.begin(), opv.end(), clamped.begin(), [](double o) { return std::clamp(o, 0.0, 1.0); });
  const auto anchors = scene::select_anchors(clamped, std::min(cfg.anchors, model.primitives()));

  const auto enc = tokenizer::encode(t, f.bound, model.encoder, cfg.encoder, pos, op, anchors, model.tx);
  const ad::Var e_x = tokenizer::embed_euclidean(t, pos, cfg.encoder.frequencies, cfg.encoder.embed_scale);
  const auto etx = tokenizer::embed_euclidean(model.tx, cfg.encoder.frequencies, cfg.encoder.embed_scale);
  const ad::Var e_tx = t.constant(ad::Tensor(1, static_cast<int>(etx.size()), etx));
  const auto fields = mapping::map_fields(t, f.bound, model.mapping, cfg.mapping, e_tx, e_x, enc.cls);

  f.d_attn = fields.residuals.d_attn;
  f.effective.position = pos;
  f.effective.rotation =
      ad::normalize_rows(t, ad::add(t, slot(model.scene_slots.rotation), fields.residuals.d_rotation));
  f.effective.log_scale = ad::add(t, slot(model.scene_slots.log_scale), fields.residuals.d_scaling);
  f.effective.opacity = ad::clamp(t, ad::add(t, op, fields.residuals.d_attn), 0.0, 1.0);
  f.effective.signal = ad::add(t, ad::add(t, slot(model.scene_slots.signal), fields.xi), fields.residuals.d_signal);
  f.effective.attenuation = fields.delta;
  return f;
}

RenderTarget RenderTarget::spectrum(double view_limit_deg) {
  RenderTarget r;
  r.kind = Observation::kSpectrum;
  r.mercator = render::Mercator().with_view_limit(view_limit_deg);
  r.grid = std::make_shared<const render::SampleGrid>(render::SampleGrid::spectrum(r.mercator));
  return r;
}

RenderTarget RenderTarget::rssi_plane(int width, int height) {
  RenderTarget r = plane(width, height);
  r.kind = Observation::kRssi;
  return r;
}

RenderTarget RenderTarget::plane(int width, int height) {
  RenderTarget r;
  r.kind = Observation::kPlane;
  r.grid = std::make_shared<const render::SampleGrid>(
      render::SampleGrid::plane(width, height, r.mercator.v_max_deg()));
  return r;
}

ad::Var observe(ad::Tape& t, const ForwardPass& fwd, const Model& model, const RenderTarget& target,
                const render::ReceiverPose& pose) {
  render::RenderSetup setup;
  setup.receiver = pose;
  setup.mercator = target.mercator;
  setup.grid = target.grid;
  setup.tile_size = target.tile_size;
  setup.composite = target.composite;
  setup.sh_degree = model.config.sh_degree;
  const ad::Var map = render::render(t, fwd.effective, setup);
  return target.kind == Observation::kRssi ? render::rssi_from_map(t, map, target.rssi) : map;
}

std::vector<ad::Tensor> predict(const Model& model, const RenderTarget& target,
                                std::span<const render::ReceiverPose> poses) {
  ad::Tape t;
  const ForwardPass f = forward(t, model, false);
  std::vector<ad::Tensor> out;
  for (const auto& p : poses) out.push_back(t.value(observe(t, f, model, target, p)));
  return out;
}

}  // namespace rfsplat::train
