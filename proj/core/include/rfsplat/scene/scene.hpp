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

namespace rfsplat::scene {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Quaternions are stored as (w, x, y, z).
Eigen::Matrix3d rotation_matrix(const Eigen::Vector4d& unit_quaternion);

// A 3D Gaussian acting as a virtual transmitter. Scale is stored as its
// logarithm so every axis stays strictly positive. The signal coefficients
// hold a complex value per SH basis function, interleaved as (re, im).
struct GaussianPrimitive {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector4d rotation{1.0, 0.0, 0.0, 0.0};
  Eigen::Vector3d log_scale = Eigen::Vector3d::Zero();
  double opacity = 0.1;
  std::vector<double> signal;

  Eigen::Vector3d scale() const { return log_scale.array().exp(); }
};

// Number of reals in a primitive's signal vector for SH degree `degree`.
int signal_size(int sh_degree);

struct Scene {
  std::vector<GaussianPrimitive> primitives;
  Eigen::Vector3d tx_position = Eigen::Vector3d::Zero();
  int anchor_count = 1;
  int sh_degree = 2;

  int size() const { return static_cast<int>(primitives.size()); }
  // Throws std::invalid_argument when an invariant is broken: empty scene,
  // anchor count outside 1..N, non-unit rotation, opacity outside [0, 1],
  // wrong signal length or non-finite values.
  void validate() const;
};

struct SceneDefaults {
  int sh_degree = 2;
  double opacity = 0.1;
  double min_scale = 0.01;
  double max_scale = 1.0;
  int anchor_count = 256;
};

// One primitive per point with identity rotation, zero signal, the default
// opacity and an isotropic scale equal to the mean nearest-neighbour distance
// clamped to [min_scale, max_scale]. The anchor count is capped at the point
// count. Throws std::invalid_argument for an empty cloud.
Scene init_from_point_cloud(std::span<const Eigen::Vector3d> points, const SceneDefaults& defaults,
                            const Eigen::Vector3d& tx_position);

// Indices of the m most opaque primitives, most opaque first; equal
// opacities resolve to the lower index. Throws std::invalid_argument unless
// 1 <= m <= N.
std::vector<int> select_anchors(const Scene& scene, int m);
std::vector<int> select_anchors(std::span<const double> opacities, int m);

// Per-primitive residuals, one row per primitive.
struct ResidualUpdate {
  RowMatrix d_rotation;   // N x 4
  RowMatrix d_scaling;    // N x 3
  RowMatrix d_signal;     // N x signal_size
  Eigen::VectorXd d_attn; // N

  static ResidualUpdate zeros(int primitives, int signal_length);
};

// Effective parameters derived from a scene plus residuals; the scene itself
// is untouched.
struct EffectiveScene {
  RowMatrix rotation;       // N x 4, unit rows
  RowMatrix log_scale;      // N x 3
  RowMatrix signal;         // N x signal_size
  Eigen::VectorXd opacity;  // N, clamped to [0, 1]
};

// rotation <- normalize(q + d_rotation), log-scale <- log-scale + d_scaling,
// signal <- signal + d_signal, opacity <- clamp(opacity + d_attn, 0, 1).
// Throws std::invalid_argument on shape mismatch or when a rotation residual
// cancels its quaternion.
EffectiveScene apply_residuals(const Scene& scene, const ResidualUpdate& r);

}  // namespace rfsplat::scene
