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

#include "rfsplat/scene/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rfsplat/scene/sh.hpp"

namespace rfsplat::scene {

Eigen::Matrix3d rotation_matrix(const Eigen::Vector4d& q) {
  const double w = q[0], x = q[1], y = q[2], z = q[3];
  Eigen::Matrix3d r;
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return r;
}

int signal_size(int sh_degree) { return 2 * sh_coefficient_count(sh_degree); }

void Scene::validate() const {
  const int n = size();
  if (n == 0) throw std::invalid_argument("scene has no primitives");
  if (anchor_count < 1 || anchor_count > n) {
    throw std::invalid_argument("anchor count must be in 1..N");
  }
  const std::size_t sig = static_cast<std::size_t>(signal_size(sh_degree));
  for (const auto& p : primitives) {
    if (std::abs(p.rotation.norm() - 1.0) > 1e-9) {
      throw std::invalid_argument("primitive rotation is not a unit quaternion");
    }
    if (!(p.opacity >= 0.0 && p.opacity <= 1.0)) {
      throw std::invalid_argument("primitive opacity outside [0, 1]");
    }
    if (p.signal.size() != sig) throw std::invalid_argument("primitive signal has wrong length");
    if (!p.position.allFinite() || !p.log_scale.allFinite()) {
      throw std::invalid_argument("primitive has non-finite geometry");
    }
  }
  if (!tx_position.allFinite()) throw std::invalid_argument("transmitter position is not finite");
}

Scene init_from_point_cloud(std::span<const Eigen::Vector3d> points, const SceneDefaults& defaults,
                            const Eigen::Vector3d& tx_position) {
  if (points.empty()) throw std::invalid_argument("point cloud is empty");
  const std::size_t n = points.size();

  double scale = defaults.max_scale;
  if (n > 1) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) best = std::min(best, (points[i] - points[j]).norm());
      }
      total += best;
    }
    scale = total / static_cast<double>(n);
  }
  scale = std::clamp(scale, defaults.min_scale, defaults.max_scale);

  Scene s;
  s.tx_position = tx_position;
  s.sh_degree = defaults.sh_degree;
  s.anchor_count = std::min(defaults.anchor_count, static_cast<int>(n));
  const int sig = signal_size(defaults.sh_degree);
  s.primitives.reserve(n);
  for (const auto& p : points) {
    GaussianPrimitive g;
    g.position = p;
    g.log_scale = Eigen::Vector3d::Constant(std::log(scale));
    g.opacity = defaults.opacity;
    g.signal.assign(static_cast<std::size_t>(sig), 0.0);
    s.primitives.push_back(std::move(g));
  }
  return s;
}

std::vector<int> select_anchors(std::span<const double> opacities, int m) {
  const int n = static_cast<int>(opacities.size());
  if (m < 1 || m > n) {
    throw std::invalid_argument("anchor count " + std::to_string(m) + " must be in 1.." +
                                std::to_string(n));
  }
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::partial_sort(idx.begin(), idx.begin() + m, idx.end(), [&](int a, int b) {
    if (opacities[a] != opacities[b]) return opacities[a] > opacities[b];
    return a < b;
  });
  idx.resize(static_cast<std::size_t>(m));
  return idx;
}

std::vector<int> select_anchors(const Scene& scene, int m) {
  std::vector<double> op;
  op.reserve(scene.primitives.size());
  for (const auto& p : scene.primitives) op.push_back(p.opacity);
  return select_anchors(op, m);
}

ResidualUpdate ResidualUpdate::zeros(int primitives, int signal_length) {
  ResidualUpdate r;
  r.d_rotation = RowMatrix::Zero(primitives, 4);
  r.d_scaling = RowMatrix::Zero(primitives, 3);
  r.d_signal = RowMatrix::Zero(primitives, signal_length);
  r.d_attn = Eigen::VectorXd::Zero(primitives);
  return r;
}

EffectiveScene apply_residuals(const Scene& scene, const ResidualUpdate& r) {
  const int n = scene.size();
  const int sig = signal_size(scene.sh_degree);
  if (r.d_rotation.rows() != n || r.d_rotation.cols() != 4 || r.d_scaling.rows() != n ||
      r.d_scaling.cols() != 3 || r.d_signal.rows() != n || r.d_signal.cols() != sig ||
      r.d_attn.size() != n) {
    throw std::invalid_argument("residual shapes do not match the scene");
  }
  EffectiveScene e;
  e.rotation.resize(n, 4);
  e.log_scale.resize(n, 3);
  e.signal.resize(n, sig);
  e.opacity.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto& p = scene.primitives[static_cast<std::size_t>(i)];
    const Eigen::Vector4d q = p.rotation + r.d_rotation.row(i).transpose();
    const double qn = q.norm();
    if (!(qn > 0.0)) throw std::invalid_argument("rotation residual cancels the quaternion");
    e.rotation.row(i) = (q / qn).transpose();
    e.log_scale.row(i) = (p.log_scale + r.d_scaling.row(i).transpose()).transpose();
    for (int k = 0; k < sig; ++k) e.signal(i, k) = p.signal[static_cast<std::size_t>(k)] + r.d_signal(i, k);
    e.opacity[i] = std::clamp(p.opacity + r.d_attn[i], 0.0, 1.0);
  }
  return e;
}

}  // namespace rfsplat::scene
