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

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "rfsplat/autodiff/params.hpp"
#include "rfsplat/autodiff/tape.hpp"
#include "rfsplat/mapping/mapping_net.hpp"
#include "rfsplat/render/render_op.hpp"
#include "rfsplat/render/rssi_map.hpp"
#include "rfsplat/scene/scene.hpp"
#include "rfsplat/tokenizer/encoder.hpp"

namespace rfsplat::train {

struct ModelConfig {
  tokenizer::EncoderConfig encoder;
  mapping::MappingConfig mapping;
  int anchors = 256;  // capped at the primitive count
  int sh_degree = 2;

  // Copies the widths the mapping net inherits from the encoder and the SH
  // degree into `mapping`.
  void sync();
  void validate() const;
};

// Slots of the raw Gaussian tensors inside the parameter set.
struct SceneSlots {
  int position = -1;   // N x 3
  int rotation = -1;   // N x 4
  int log_scale = -1;  // N x 3
  int opacity = -1;    // N x 1
  int signal = -1;     // N x signal_size
};

// Everything that is learned, in one ParameterSet: raw Gaussians, encoder and
// mapping net. The transmitter position is fixed.
struct Model {
  ModelConfig config;
  ad::ParameterSet params;
  SceneSlots scene_slots;
  tokenizer::EncoderLayout encoder;
  mapping::MappingLayout mapping;
  Eigen::Vector3d tx = Eigen::Vector3d::Zero();

  static Model create(const scene::Scene& init, ModelConfig config, std::uint64_t seed);
  // Rebinds saved tensors to a freshly laid out model of `primitives`
  // Gaussians. Throws FormatError if names or shapes differ.
  static Model restore(ModelConfig config, const Eigen::Vector3d& tx, int primitives,
                       const ad::ParameterSet& saved);

  int primitives() const { return params[scene_slots.position].rows; }
  // Raw Gaussians with normalized rotations.
  scene::Scene scene() const;
  // Keeps opacities in [0, 1] and rotations at unit norm after an update.
  void project_constraints();
};

// Tape handles of one forward pass through encoder and mapping net.
struct ForwardPass {
  std::vector<ad::Var> bound;
  render::RenderVars effective;
  ad::Var d_attn;  // N x 1
};

ForwardPass forward(ad::Tape& t, const Model& model, bool trainable);

enum class Observation { kSpectrum, kRssi, kPlane };

// What a measurement looks like and how it is rendered.
struct RenderTarget {
  Observation kind = Observation::kSpectrum;
  render::Mercator mercator;
  std::shared_ptr<const render::SampleGrid> grid;
  int tile_size = 16;
  render::CompositeConfig composite;
  render::RssiMapConfig rssi;

  // 360 x 90 azimuth-major grid seen through a map widened to `view_limit`.
  static RenderTarget spectrum(double view_limit_deg = 89.0);
  // Scalar dB read from a width x height perception plane.
  static RenderTarget rssi_plane(int width, int height);
  static RenderTarget plane(int width, int height);

  int rows() const { return kind == Observation::kRssi ? 1 : grid->rows; }
  int cols() const { return kind == Observation::kRssi ? 1 : grid->cols; }
};

// Rendered observation at `pose`, shaped rows() x cols().
ad::Var observe(ad::Tape& t, const ForwardPass& fwd, const Model& model, const RenderTarget& target,
                const render::ReceiverPose& pose);

// Plain evaluation of several poses sharing one network pass.
std::vector<ad::Tensor> predict(const Model& model, const RenderTarget& target,
                                std::span<const render::ReceiverPose> poses);

}  // namespace rfsplat::train
