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

#include "rfsplat/render/projection.hpp"

#include <algorithm>
#include <stdexcept>

namespace rfsplat::render {

void RenderPrimitives::validate() const {
  const auto n = position.rows();
  const int s = scene::signal_size(sh_degree);
  if (position.cols() != 3 || rotation.rows() != n || rotation.cols() != 4 ||
      log_scale.rows() != n || log_scale.cols() != 3 || opacity.size() != n ||
      signal.rows() != n || signal.cols() != s || attenuation.size() != n) {
    throw std::invalid_argument("render primitive arrays have inconsistent shapes");
  }
}

RenderPrimitives primitives_from_scene(const scene::Scene& scene) {
  const int n = scene.size();
  const int s = scene::signal_size(scene.sh_degree);
  RenderPrimitives out;
  out.sh_degree = scene.sh_degree;
  out.position.resize(n, 3);
  out.rotation.resize(n, 4);
  out.log_scale.resize(n, 3);
  out.opacity.resize(n);
  out.signal.resize(n, s);
  out.attenuation = Eigen::VectorXd::Ones(n);
  for (int i = 0; i < n; ++i) {
    const auto& p = scene.primitives[static_cast<std::size_t>(i)];
    out.position.row(i) = p.position.transpose();
    out.rotation.row(i) = p.rotation.transpose();
    out.log_scale.row(i) = p.log_scale.transpose();
    out.opacity[i] = p.opacity;
    if (static_cast<int>(p.signal.size()) != s) {
      throw std::invalid_argument("primitive signal length does not match SH degree");
    }
    for (int k = 0; k < s; ++k) out.signal(i, k) = p.signal[static_cast<std::size_t>(k)];
  }
  return out;
}

Eigen::Matrix2d project_covariance(const scene::GaussianPrimitive& prim, const ReceiverPose& rx,
                                   const Mercator& mercator) {
  const std::array<double, 3> pos{prim.position.x(), prim.position.y(), prim.position.z()};
  const std::array<double, 4> quat{prim.rotation[0], prim.rotation[1], prim.rotation[2],
                                   prim.rotation[3]};
  const std::array<double, 3> ls{prim.log_scale.x(), prim.log_scale.y(), prim.log_scale.z()};
  const std::array<double, 2> zero_signal{0.0, 0.0};
  const auto p = project_primitive<double>(pos, quat, ls, zero_signal, 0, rx, mercator);
  Eigen::Matrix2d cov;
  cov << p.cov_uu, p.cov_uv, p.cov_uv, p.cov_vv;
  return cov;
}

std::vector<ProjectedGaussian> project_all(const RenderPrimitives& prims, const ReceiverPose& rx,
                                           const Mercator& mercator) {
  prims.validate();
  std::vector<ProjectedGaussian> out;
  out.reserve(static_cast<std::size_t>(prims.size()));
  const auto sig_cols = static_cast<std::size_t>(prims.signal.cols());
  for (int i = 0; i < prims.size(); ++i) {
    const std::array<double, 3> pos{prims.position(i, 0), prims.position(i, 1),
                                    prims.position(i, 2)};
    const std::array<double, 4> quat{prims.rotation(i, 0), prims.rotation(i, 1),
                                     prims.rotation(i, 2), prims.rotation(i, 3)};
    const std::array<double, 3> ls{prims.log_scale(i, 0), prims.log_scale(i, 1),
                                   prims.log_scale(i, 2)};
    const std::span<const double> sig(prims.signal.row(i).data(), sig_cols);
    const auto p = project_primitive<double>(pos, quat, ls, sig, prims.sh_degree, rx, mercator);
    if (std::abs(p.latitude_deg) > mercator.view_limit_deg()) continue;
    ProjectedGaussian g;
    g.index = i;
    g.center = {p.u >= 180.0 ? p.u - 360.0 : p.u, p.v};
    g.covariance << p.cov_uu, p.cov_uv, p.cov_uv, p.cov_vv;
    g.conic = {p.conic_a, p.conic_b, p.conic_c};
    g.depth = p.depth;
    g.opacity = std::clamp(prims.opacity[i], 0.0, 1.0);
    g.signal = p.signal;
    g.attenuation = prims.attenuation[i];
    g.radius_u = 3.0 * std::sqrt(p.cov_uu);
    g.radius_v = 3.0 * std::sqrt(p.cov_vv);
    out.push_back(g);
  }
  return out;
}

}  // namespace rfsplat::render
