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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "rfsplat/scene/scene.hpp"
#include "rfsplat/scene/sh.hpp"

namespace rfsplat::scene {
namespace {

TEST(Init, SinglePoint) {
  const std::vector<Eigen::Vector3d> pts{Eigen::Vector3d::Zero()};
  const Scene s = init_from_point_cloud(pts, {}, {1, 2, 3});
  ASSERT_EQ(s.size(), 1);
  EXPECT_EQ(s.primitives[0].position, Eigen::Vector3d::Zero());
  EXPECT_EQ(s.primitives[0].opacity, 0.1);
  EXPECT_EQ(s.primitives[0].rotation, Eigen::Vector4d(1, 0, 0, 0));
  EXPECT_EQ(s.anchor_count, 1);
  EXPECT_EQ(s.primitives[0].signal, std::vector<double>(18, 0.0));
  EXPECT_NO_THROW(s.validate());
}

TEST(Init, TwoPointsOneMetreApart) {
  const std::vector<Eigen::Vector3d> pts{{0, 0, 0}, {1, 0, 0}};
  const Scene s = init_from_point_cloud(pts, {}, Eigen::Vector3d::Zero());
  for (const auto& p : s.primitives) EXPECT_NEAR(p.scale().x(), 1.0, 1e-15);
}

TEST(Init, EmptyCloudThrows) {
  EXPECT_THROW(init_from_point_cloud({}, {}, Eigen::Vector3d::Zero()), std::invalid_argument);
}

TEST(Init, ScalesMatchBruteForceNeighbours) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  std::vector<Eigen::Vector3d> pts(100);
  for (auto& p : pts) p = {u(rng), u(rng), 0.02 * u(rng)};
  const Scene s = init_from_point_cloud(pts, {}, Eigen::Vector3d::Zero());
  double mean = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double best = INFINITY;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i != j) best = std::min(best, (pts[i] - pts[j]).norm());
    }
    mean += best;
  }
  mean = std::clamp(mean / 100.0, 0.01, 1.0);
  for (const auto& p : s.primitives) {
    EXPECT_NEAR(p.scale().x(), mean, 1e-12);
    EXPECT_EQ(p.scale().x(), p.scale().z());
  }
  EXPECT_EQ(s.anchor_count, 100);
}

TEST(Anchors, Examples) {
  const std::vector<double> op{0.9, 0.1, 0.5};
  EXPECT_EQ(select_anchors(op, 2), (std::vector<int>{0, 2}));
  const std::vector<double> flat(5, 0.3);
  EXPECT_EQ(select_anchors(flat, 3), (std::vector<int>{0, 1, 2}));
  EXPECT_THROW(select_anchors(op, 4), std::invalid_argument);
  EXPECT_THROW(select_anchors(op, 0), std::invalid_argument);
}

TEST(Anchors, MatchFullSortAndMonotoneTransforms) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> op(1000);
  for (double& o : op) o = std::round(u(rng) * 200.0) / 200.0;  // force ties
  std::vector<int> ref(op.size());
  std::iota(ref.begin(), ref.end(), 0);
  std::stable_sort(ref.begin(), ref.end(), [&](int a, int b) { return op[a] > op[b]; });
  ref.resize(64);
  auto got = select_anchors(op, 64);
  EXPECT_EQ(got, ref);
  std::vector<double> warped(op.size());
  for (std::size_t i = 0; i < op.size(); ++i) warped[i] = std::exp(3.0 * op[i]) + 1.0;
  EXPECT_EQ(select_anchors(warped, 64), got);
}

Scene two_primitive_scene() {
  Scene s;
  s.sh_degree = 1;
  for (int i = 0; i < 2; ++i) {
    GaussianPrimitive p;
    p.position = {double(i), 0.0, 0.0};
    p.opacity = 0.9 - 0.5 * i;
    p.signal.assign(8, 0.1 * (i + 1));
    s.primitives.push_back(p);
  }
  s.anchor_count = 2;
  return s;
}

TEST(Residuals, ZeroIsIdentity) {
  const Scene s = two_primitive_scene();
  const auto e = apply_residuals(s, ResidualUpdate::zeros(2, 8));
  for (int i = 0; i < 2; ++i) {
    const auto& p = s.primitives[static_cast<std::size_t>(i)];
    EXPECT_EQ(e.opacity[i], p.opacity);
    EXPECT_EQ(Eigen::Vector4d(e.rotation.row(i)), p.rotation);
    EXPECT_EQ(Eigen::Vector3d(e.log_scale.row(i)), p.log_scale);
    for (int k = 0; k < 8; ++k) EXPECT_EQ(e.signal(i, k), p.signal[static_cast<std::size_t>(k)]);
  }
}

TEST(Residuals, OpacityClamps) {
  const Scene s = two_primitive_scene();
  auto r = ResidualUpdate::zeros(2, 8);
  r.d_attn << 0.3, -1.0;
  const auto e = apply_residuals(s, r);
  EXPECT_EQ(e.opacity[0], 1.0);
  EXPECT_EQ(e.opacity[1], 0.0);
}

TEST(Residuals, ShapeMismatchThrows) {
  EXPECT_THROW(apply_residuals(two_primitive_scene(), ResidualUpdate::zeros(3, 8)),
               std::invalid_argument);
  EXPECT_THROW(apply_residuals(two_primitive_scene(), ResidualUpdate::zeros(2, 18)),
               std::invalid_argument);
}

TEST(Residuals, MatchElementwiseReference) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0, 0.3);
  const Scene s = two_primitive_scene();
  auto r = ResidualUpdate::zeros(2, 8);
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 4; ++k) r.d_rotation(i, k) = n(rng);
    for (int k = 0; k < 3; ++k) r.d_scaling(i, k) = n(rng);
    for (int k = 0; k < 8; ++k) r.d_signal(i, k) = n(rng);
    r.d_attn[i] = n(rng);
  }
  const auto e = apply_residuals(s, r);
  for (int i = 0; i < 2; ++i) {
    const auto& p = s.primitives[static_cast<std::size_t>(i)];
    double norm = 0.0;
    for (int k = 0; k < 4; ++k) norm += std::pow(p.rotation[k] + r.d_rotation(i, k), 2);
    norm = std::sqrt(norm);
    for (int k = 0; k < 4; ++k) {
      EXPECT_NEAR(e.rotation(i, k), (p.rotation[k] + r.d_rotation(i, k)) / norm, 1e-15);
    }
    for (int k = 0; k < 3; ++k) EXPECT_EQ(e.log_scale(i, k), p.log_scale[k] + r.d_scaling(i, k));
    for (int k = 0; k < 8; ++k) {
      EXPECT_EQ(e.signal(i, k), p.signal[static_cast<std::size_t>(k)] + r.d_signal(i, k));
    }
    EXPECT_EQ(e.opacity[i], std::clamp(p.opacity + r.d_attn[i], 0.0, 1.0));
  }
}

TEST(Residuals, RepeatedUpdatesStayUnit) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0, 0.05);
  Scene s = two_primitive_scene();
  auto r = ResidualUpdate::zeros(2, 8);
  for (int step = 0; step < 10000; ++step) {
    for (int k = 0; k < 4; ++k) r.d_rotation(0, k) = n(rng);
    const auto e = apply_residuals(s, r);
    s.primitives[0].rotation = e.rotation.row(0).transpose();
    ASSERT_NEAR(s.primitives[0].rotation.norm(), 1.0, 1e-9);
  }
}

TEST(Validate, RejectsBrokenScenes) {
  Scene s = two_primitive_scene();
  EXPECT_NO_THROW(s.validate());
  s.anchor_count = 3;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = two_primitive_scene();
  s.primitives[0].opacity = 1.5;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = two_primitive_scene();
  s.primitives[1].rotation = {1, 1, 0, 0};
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(SphericalHarmonics, DegreeZeroIsConstantAndBandsAreOrthonormal) {
  // Monte Carlo orthonormality on the sphere with a fixed sample.
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0, 1);
  const int count = 200000;
  Eigen::Matrix<double, 16, 16> gram = Eigen::Matrix<double, 16, 16>::Zero();
  std::array<double, 16> y{};
  for (int i = 0; i < count; ++i) {
    Eigen::Vector3d d(n(rng), n(rng), n(rng));
    d.normalize();
    sh_basis<double>(3, d.x(), d.y(), d.z(), y);
    for (int a = 0; a < 16; ++a) {
      for (int b = 0; b < 16; ++b) gram(a, b) += y[a] * y[b];
    }
  }
  gram *= 4.0 * M_PI / count;
  EXPECT_LT((gram - Eigen::Matrix<double, 16, 16>::Identity()).cwiseAbs().maxCoeff(), 0.03);
  EXPECT_THROW(sh_coefficient_count(4), std::invalid_argument);
}

}  // namespace
}  // namespace rfsplat::scene
