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

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "rfsplat/autodiff/dual.hpp"
#include "rfsplat/errors.hpp"
#include "rfsplat/render/mercator.hpp"
#include "rfsplat/scene/scene.hpp"
#include "rfsplat/scene/sh.hpp"

namespace rfsplat::render {

inline constexpr double kCovarianceFloor = 1e-6;  // deg^2
inline constexpr double kSignalEps = 1e-12;

// Receiver location and body-to-world orientation (w, x, y, z).
struct ReceiverPose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector4d orientation{1.0, 0.0, 0.0, 0.0};
};

struct ProjectedGaussian {
  int index = 0;  // primitive index in the scene
  PlanePoint center;
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Identity();
  Eigen::Vector3d conic = Eigen::Vector3d(1.0, 0.0, 1.0);  // (a, b, c) of the inverse
  double depth = 1.0;
  double opacity = 0.0;
  double signal = 0.0;
  double attenuation = 1.0;
  double radius_u = 0.0;  // 3 sigma half extents of the bounding box
  double radius_v = 0.0;
};

// Per-primitive projection in generic arithmetic so it can be run on dual
// numbers for the backward pass.
template <typename T>
struct ProjectionT {
  T u, v;
  T cov_uu, cov_uv, cov_vv;
  T conic_a, conic_b, conic_c;
  T signal;
  double depth = 0.0;
  double latitude_deg = 0.0;
};

namespace detail {

// Builds the floored covariance and its inverse from the raw 2x2 entries.
template <typename T>
void floor_and_invert(T p, T q, T s, ProjectionT<T>& out) {
  using std::sqrt;
  const T half_diff = 0.5 * (p - s);
  const T disc = sqrt(half_diff * half_diff + q * q);
  const T mean = 0.5 * (p + s);
  const double lo = ad::value_of(mean) - ad::value_of(disc);
  if (lo < kCovarianceFloor) {
    T l1 = mean + disc;
    T l2 = T(kCovarianceFloor);
    if (ad::value_of(l1) < kCovarianceFloor) l1 = T(kCovarianceFloor);
    // Eigenvector of the larger eigenvalue.
    T ex, ey;
    if (ad::value_of(disc) > 1e-300) {
      if (ad::value_of(half_diff) >= 0.0) {
        ex = half_diff + disc;
        ey = q;
      } else {
        ex = q;
        ey = disc - half_diff;
      }
      const T n = sqrt(ex * ex + ey * ey);
      ex = ex / n;
      ey = ey / n;
    } else {
      ex = T(1.0);
      ey = T(0.0);
    }
    p = l1 * ex * ex + l2 * ey * ey;
    q = (l1 - l2) * ex * ey;
    s = l1 * ey * ey + l2 * ex * ex;
  }
  out.cov_uu = p;
  out.cov_uv = q;
  out.cov_vv = s;
  const T det = p * s - q * q;
  out.conic_a = s / det;
  out.conic_b = -q / det;
  out.conic_c = p / det;
}

}  // namespace detail

// Centre, covariance, conic and signal magnitude of one primitive as seen from
// the receiver. Throws DegenerateProjectionError when the primitive sits on
// the receiver. The caller decides visibility from latitude_deg.
template <typename T>
ProjectionT<T> project_primitive(const std::array<T, 3>& pos, const std::array<T, 4>& quat,
                                 const std::array<T, 3>& log_scale,
                                 std::span<const double> signal, int sh_degree,
                                 const ReceiverPose& rx, const Mercator& mercator) {
  using std::asinh;
  using std::atan2;
  using std::exp;
  using std::sqrt;
  constexpr double kDeg = 180.0 / std::numbers::pi;

  const Eigen::Matrix3d q = scene::rotation_matrix(rx.orientation);
  std::array<T, 3> world;
  for (int i = 0; i < 3; ++i) world[i] = pos[i] - rx.position[i];
  std::array<T, 3> w;
  for (int i = 0; i < 3; ++i) {
    w[i] = q(0, i) * world[0] + q(1, i) * world[1] + q(2, i) * world[2];
  }
  const T r2 = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
  const double depth = std::sqrt(ad::value_of(r2));
  if (!(depth > 1e-9)) throw DegenerateProjectionError("primitive coincides with the receiver");
  const T r = sqrt(r2);
  const T rho2 = w[0] * w[0] + w[1] * w[1];
  const T rho = sqrt(rho2);
  const T lat = atan2(w[2], rho);

  ProjectionT<T> out;
  out.depth = depth;
  out.latitude_deg = ad::value_of(lat) * kDeg;
  out.u = atan2(w[1], w[0]) * kDeg;
  out.v = mercator.alpha() * asinh(w[2] / rho);

  // Jacobian of (u, v) with respect to the receiver-frame offset.
  const T a = mercator.alpha();
  T j[2][3];
  j[0][0] = -kDeg * w[1] / rho2;
  j[0][1] = kDeg * w[0] / rho2;
  j[0][2] = T(0.0);
  j[1][0] = -a * w[0] * w[2] / (r * rho2);
  j[1][1] = -a * w[1] * w[2] / (r * rho2);
  j[1][2] = a / r;

  // Sigma3 = M M^T with M = Q^T R S, so J Sigma3 J^T = (J M)(J M)^T.
  const T qn = sqrt(quat[0] * quat[0] + quat[1] * quat[1] + quat[2] * quat[2] + quat[3] * quat[3]);
  const T qw = quat[0] / qn, qx = quat[1] / qn, qy = quat[2] / qn, qz = quat[3] / qn;
  T rot[3][3];
  rot[0][0] = 1.0 - 2.0 * (qy * qy + qz * qz);
  rot[0][1] = 2.0 * (qx * qy - qw * qz);
  rot[0][2] = 2.0 * (qx * qz + qw * qy);
  rot[1][0] = 2.0 * (qx * qy + qw * qz);
  rot[1][1] = 1.0 - 2.0 * (qx * qx + qz * qz);
  rot[1][2] = 2.0 * (qy * qz - qw * qx);
  rot[2][0] = 2.0 * (qx * qz - qw * qy);
  rot[2][1] = 2.0 * (qy * qz + qw * qx);
  rot[2][2] = 1.0 - 2.0 * (qx * qx + qy * qy);
  T m[3][3];
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      const T rk = q(0, i) * rot[0][k] + q(1, i) * rot[1][k] + q(2, i) * rot[2][k];
      m[i][k] = rk * exp(log_scale[k]);
    }
  }
  T jm[2][3];
  for (int row = 0; row < 2; ++row) {
    for (int k = 0; k < 3; ++k) {
      jm[row][k] = j[row][0] * m[0][k] + j[row][1] * m[1][k] + j[row][2] * m[2][k];
    }
  }
  const T p = jm[0][0] * jm[0][0] + jm[0][1] * jm[0][1] + jm[0][2] * jm[0][2];
  const T c = jm[0][0] * jm[1][0] + jm[0][1] * jm[1][1] + jm[0][2] * jm[1][2];
  const T s = jm[1][0] * jm[1][0] + jm[1][1] * jm[1][1] + jm[1][2] * jm[1][2];
  detail::floor_and_invert(p, c, s, out);

  // SH evaluated toward the receiver, in world axes.
  const int nb = scene::sh_coefficient_count(sh_degree);
  std::array<T, 16> basis;
  const T inv = -1.0 / sqrt(world[0] * world[0] + world[1] * world[1] + world[2] * world[2]);
  scene::sh_basis<T>(sh_degree, world[0] * inv, world[1] * inv, world[2] * inv,
                     std::span<T>(basis.data(), static_cast<std::size_t>(nb)));
  T re(0.0), im(0.0);
  for (int b = 0; b < nb; ++b) {
    re += basis[b] * signal[2 * b];
    im += basis[b] * signal[2 * b + 1];
  }
  out.signal = sqrt(re * re + im * im + kSignalEps);
  return out;
}

// Flattened view of the per-primitive render inputs.
struct RenderPrimitives {
  int sh_degree = 2;
  scene::RowMatrix position;   // N x 3
  scene::RowMatrix rotation;   // N x 4
  scene::RowMatrix log_scale;  // N x 3
  Eigen::VectorXd opacity;     // N
  scene::RowMatrix signal;     // N x 2 (deg+1)^2
  Eigen::VectorXd attenuation; // N, in (0, 1]

  int size() const { return static_cast<int>(position.rows()); }
  // Throws std::invalid_argument on inconsistent shapes.
  void validate() const;
};

RenderPrimitives primitives_from_scene(const scene::Scene& scene);

// Covariance on the perception plane in deg^2.
Eigen::Matrix2d project_covariance(const scene::GaussianPrimitive& prim, const ReceiverPose& rx,
                                   const Mercator& mercator = Mercator());

// Projects every visible primitive; those outside the view limit are dropped.
std::vector<ProjectedGaussian> project_all(const RenderPrimitives& prims, const ReceiverPose& rx,
                                           const Mercator& mercator);

}  // namespace rfsplat::render
