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


#include "rfsplat/io/config.hpp"

#include <initializer_list>
#include <random>
#include <string_view>

#include "rfsplat/errors.hpp"

namespace rfsplat::io {

using nlohmann::json;

namespace {

void expect_keys(const json& j, std::string_view where, std::initializer_list<std::string_view> keys) {
  if (!j.is_object()) throw FormatError(std::string(where) + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (auto key : keys) known = known || key == k;
    if (!known) throw FormatError("unknown key '" + k + "' in " + std::string(where));
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad value for '") + key + "': " + e.what());
  }
}

json vec3(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

Eigen::Vector3d read_vec3(const json& j, const char* what) {
  std::vector<double> v;
  try {
    v = j.get<std::vector<double>>();
  } catch (const json::exception&) {
    throw FormatError(std::string(what) + ": expected [x, y, z]");
  }
  if (v.size() != 3) throw FormatError(std::string(what) + ": expected [x, y, z]");
  return {v[0], v[1], v[2]};
}

// Edge length of a cubic array, or 0 when the element count is not a cube.
int cube_side(const signal::ArrayGeometry& a) {
  int side = 1;
  while (static_cast<std::size_t>(side * side * side) < a.size()) ++side;
  return static_cast<std::size_t>(side * side * side) == a.size() ? side : 0;
}

}  // namespace

std::string to_string(train::Observation kind) {
  switch (kind) {
    case train::Observation::kSpectrum: return "spectrum";
    case train::Observation::kRssi: return "rssi";
    case train::Observation::kPlane: return "plane";
  }
  return "spectrum";
}

train::Observation observation_from_string(const std::string& s) {
  if (s == "spectrum") return train::Observation::kSpectrum;
  if (s == "rssi") return train::Observation::kRssi;
  if (s == "plane") return train::Observation::kPlane;
  throw FormatError("unknown observation kind '" + s + "' (spectrum, rssi or plane)");
}

train::RenderTarget TargetSpec::make() const {
  train::RenderTarget t;
  switch (kind) {
    case train::Observation::kSpectrum: t = train::RenderTarget::spectrum(view_limit); break;
    case train::Observation::kRssi: t = train::RenderTarget::rssi_plane(width, height); break;
    case train::Observation::kPlane: t = train::RenderTarget::plane(width, height); break;
  }
  t.tile_size = tile_size;
  return t;
}

json to_json(const train::ModelConfig& c) {
  const auto& e = c.encoder;
  const auto& m = c.mapping;
  return {
      {"encoder",
       {{"blocks", e.blocks},
        {"channels", e.channels},
        {"aux", e.aux},
        {"frequencies", e.frequencies},
        {"embed_scale", e.embed_scale},
        {"signature", {e.signature.p, e.signature.q, e.signature.r}}}},
      {"mapping",
       {{"att_width", m.att_width},
        {"att_layers", m.att_layers},
        {"att_skip", m.att_skip},
        {"sig_width", m.sig_width},
        {"sig_layers", m.sig_layers},
        {"head_width", m.head_width}}},
      {"anchors", c.anchors},
      {"sh_degree", c.sh_degree},
  };
}

train::ModelConfig model_config_from_json(const json& j, train::ModelConfig c) {
  expect_keys(j, "model", {"encoder", "mapping", "anchors", "sh_degree"});
  if (j.contains("encoder")) {
    const auto& e = j["encoder"];
    expect_keys(e, "model.encoder", {"blocks", "channels", "aux", "frequencies", "embed_scale", "signature"});
    read(e, "blocks", c.encoder.blocks);
    read(e, "channels", c.encoder.channels);
    read(e, "aux", c.encoder.aux);
    read(e, "frequencies", c.encoder.frequencies);
    read(e, "embed_scale", c.encoder.embed_scale);
    if (e.contains("signature")) {
      std::vector<int> s;
      read(e, "signature", s);
      if (s.size() != 3) throw FormatError("model.encoder.signature: expected [p, q, r]");
      try {
        c.encoder.signature = ga::Signature(s[0], s[1], s[2]);
      } catch (const std::invalid_argument& ex) {
        throw FormatError(std::string("model.encoder.signature: ") + ex.what());
      }
    }
  }
  if (j.contains("mapping")) {
    const auto& m = j["mapping"];
    expect_keys(m, "model.mapping", {"att_width", "att_layers", "att_skip", "sig_width", "sig_layers", "head_width"});
    read(m, "att_width", c.mapping.att_width);
    read(m, "att_layers", c.mapping.att_layers);
    read(m, "att_skip", c.mapping.att_skip);
    read(m, "sig_width", c.mapping.sig_width);
    read(m, "sig_layers", c.mapping.sig_layers);
    read(m, "head_width", c.mapping.head_width);
  }
  read(j, "anchors", c.anchors);
  read(j, "sh_degree", c.sh_degree);
  c.sync();
  return c;
}

json to_json(const train::TrainConfig& c) {
  return {
      {"epochs", c.epochs},
      {"batch", c.batch},
      {"max_steps", c.max_steps},
      {"seed", c.seed},
      {"adam", {{"lr", c.adam.lr}, {"beta1", c.adam.beta1}, {"beta2", c.adam.beta2}, {"eps", c.adam.eps}}},
      {"loss",
       {{"beta", c.loss.beta},
        {"alpha_reg", c.loss.alpha_reg},
        {"ssim_window", c.loss.ssim.window},
        {"ssim_sigma", c.loss.ssim.sigma}}},
  };
}

train::TrainConfig train_config_from_json(const json& j, train::TrainConfig c) {
  expect_keys(j, "train", {"epochs", "batch", "max_steps", "seed", "adam", "loss"});
  read(j, "epochs", c.epochs);
  read(j, "batch", c.batch);
  read(j, "max_steps", c.max_steps);
  read(j, "seed", c.seed);
  if (j.contains("adam")) {
    const auto& a = j["adam"];
    expect_keys(a, "train.adam", {"lr", "beta1", "beta2", "eps"});
    read(a, "lr", c.adam.lr);
    read(a, "beta1", c.adam.beta1);
    read(a, "beta2", c.adam.beta2);
    read(a, "eps", c.adam.eps);
  }
  if (j.contains("loss")) {
    const auto& l = j["loss"];
    expect_keys(l, "train.loss", {"beta", "alpha_reg", "ssim_window", "ssim_sigma"});
    read(l, "beta", c.loss.beta);
    read(l, "alpha_reg", c.loss.alpha_reg);
    read(l, "ssim_window", c.loss.ssim.window);
    read(l, "ssim_sigma", c.loss.ssim.sigma);
  }
  return c;
}

json to_json(const TargetSpec& t) {
  return {{"kind", to_string(t.kind)},
          {"width", t.width},
          {"height", t.height},
          {"view_limit", t.view_limit},
          {"tile_size", t.tile_size}};
}

TargetSpec target_from_json(const json& j, TargetSpec t) {
  expect_keys(j, "target", {"kind", "width", "height", "view_limit", "tile_size"});
  if (j.contains("kind")) {
    std::string k;
    read(j, "kind", k);
    t.kind = observation_from_string(k);
  }
  read(j, "width", t.width);
  read(j, "height", t.height);
  read(j, "view_limit", t.view_limit);
  read(j, "tile_size", t.tile_size);
  return t;
}

json to_json(const train::SyntheticSceneSpec& s) {
  json refl = json::array();
  for (const auto& r : s.reflectors) {
    refl.push_back({{"center", vec3(r.center)},
                    {"normal", vec3(r.normal)},
                    {"tangent", vec3(r.tangent)},
                    {"half_width", r.half_width},
                    {"half_height", r.half_height},
                    {"attenuation", r.attenuation}});
  }
  json rx = json::array();
  for (const auto& p : s.rx) rx.push_back(vec3(p));
  return {{"reflectors", refl},
          {"tx", vec3(s.tx)},
          {"rx", rx},
          {"wavelength", s.wavelength},
          {"array_cube", cube_side(s.array)},
          {"max_bounces", s.max_bounces},
          {"line_of_sight", s.line_of_sight},
          {"sample_spacing", s.sample_spacing},
          {"reference_power", s.reference_power}};
}

train::SyntheticSceneSpec synth_spec_from_json(const json& j) {
  expect_keys(j, "scene spec",
              {"reflectors", "tx", "rx", "random_rx", "wavelength", "array_cube", "max_bounces", "line_of_sight",
               "sample_spacing", "reference_power"});
  train::SyntheticSceneSpec s;
  if (j.contains("reflectors")) {
    for (const auto& r : j["reflectors"]) {
      expect_keys(r, "reflector", {"center", "normal", "tangent", "half_width", "half_height", "attenuation"});
      train::Reflector out;
      if (r.contains("center")) out.center = read_vec3(r["center"], "reflector.center");
      if (r.contains("normal")) out.normal = read_vec3(r["normal"], "reflector.normal");
      if (r.contains("tangent")) out.tangent = read_vec3(r["tangent"], "reflector.tangent");
      read(r, "half_width", out.half_width);
      read(r, "half_height", out.half_height);
      read(r, "attenuation", out.attenuation);
      s.reflectors.push_back(out);
    }
  }
  if (j.contains("tx")) s.tx = read_vec3(j["tx"], "tx");
  if (j.contains("rx")) {
    for (const auto& p : j["rx"]) s.rx.push_back(read_vec3(p, "rx"));
  }
  // {"count": n, "min": [..], "max": [..], "seed": s} draws uniform poses in a box.
  if (j.contains("random_rx")) {
    const auto& r = j["random_rx"];
    expect_keys(r, "random_rx", {"count", "min", "max", "seed"});
    int count = 0;
    std::uint64_t seed = 7;
    read(r, "count", count);
    read(r, "seed", seed);
    const Eigen::Vector3d lo = read_vec3(r.at("min"), "random_rx.min");
    const Eigen::Vector3d hi = read_vec3(r.at("max"), "random_rx.max");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < count; ++i) {
      Eigen::Vector3d p;
      for (int k = 0; k < 3; ++k) p[k] = lo[k] + (hi[k] - lo[k]) * u(rng);
      s.rx.push_back(p);
    }
  }
  read(j, "wavelength", s.wavelength);
  if (j.contains("array_cube")) {
    int side = 0;
    read(j, "array_cube", side);
    if (side < 1) throw FormatError("array_cube must be positive");
    s.array = signal::ArrayGeometry::cubic(side);
  }
  read(j, "max_bounces", s.max_bounces);
  read(j, "line_of_sight", s.line_of_sight);
  read(j, "sample_spacing", s.sample_spacing);
  read(j, "reference_power", s.reference_power);
  return s;
}

}  // namespace rfsplat::io
