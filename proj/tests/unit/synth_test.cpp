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

#include <cmath>
#include <numbers>
#include <random>

#include "rfsplat/ga/versor.hpp"
#include "rfsplat/train/synth.hpp"

namespace rfsplat::train {
namespace {

Eigen::Vector3d householder(const Eigen::Vector3d& n, const Eigen::Vector3d& d) {
  const Eigen::Matrix3d h = Eigen::Matrix3d::Identity() - 2.0 * n * n.transpose() / n.squaredNorm();
  return h * d;
}

Reflector floor_plate(double attenuation = 0.5) {
  Reflector r;
  r.center = {0, 0, 0};
  r.normal = {0, 0, 1};
  r.tangent = {1, 0, 0};
  r.half_width = 10;
  r.half_height = 10;
  r.attenuation = attenuation;
  return r;
}

TEST(Synth, LineOfSightAtOneMetre) {
  SyntheticSceneSpec spec;
  spec.tx = {0, 0, 0};
  const auto paths = trace_paths(spec, {1, 0, 0});
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_NEAR(paths[0].length, 1.0, 1e-15);
  EXPECT_NEAR(paths[0].attenuation, 1.0, 1e-15);
  EXPECT_NEAR(paths[0].phase, std::fmod(2 * std::numbers::pi / spec.wavelength, 2 * std::numbers::pi), 1e-12);
  EXPECT_NEAR((paths[0].arrival - Eigen::Vector3d(-1, 0, 0)).norm(), 0.0, 1e-15);
}

TEST(Synth, LineOfSightPowerFallsWithSquaredDistance) {
  SyntheticSceneSpec spec;
  spec.tx = {0, 0, 0};
  spec.rx = {{2, 0, 0}, {0, 4, 0}};
  const auto ds = synth_generate(spec);
  ASSERT_EQ(ds.measurements.size(), 2u);
  EXPECT_NEAR(ds.measurements[0].rssi_db, -20 * std::log10(2.0), 1e-12);
  EXPECT_NEAR(ds.measurements[1].rssi_db, -20 * std::log10(4.0), 1e-12);
  EXPECT_NEAR(ds.measurements[0].spectrum.max(), 1.0, 1e-15);
  EXPECT_TRUE(ds.points.empty());
}

TEST(Synth, MirrorPathMatchesExplicitBouncePoint) {
  SyntheticSceneSpec spec;
  spec.reflectors = {floor_plate(0.7)};
  spec.tx = {0.3, -0.2, 2.0};
  spec.line_of_sight = false;
  const Eigen::Vector3d rx{3.0, 1.0, 1.0};
  const auto paths = trace_paths(spec, rx);
  ASSERT_EQ(paths.size(), 1u);
  // Bounce point: where the segment TX -> RX' meets z = 0, with RX' mirrored.
  const Eigen::Vector3d rx_image{rx.x(), rx.y(), -rx.z()};
  const double s = spec.tx.z() / (spec.tx.z() - rx_image.z());
  const Eigen::Vector3d bounce = spec.tx + s * (rx_image - spec.tx);
  ASSERT_EQ(paths[0].bounces.size(), 1u);
  EXPECT_LT((paths[0].bounces[0] - bounce).norm(), 1e-12);
  const double explicit_length = (bounce - spec.tx).norm() + (rx - bounce).norm();
  const Eigen::Vector3d tx_image{spec.tx.x(), spec.tx.y(), -spec.tx.z()};
  EXPECT_NEAR(paths[0].length, explicit_length, 1e-12);
  EXPECT_NEAR(paths[0].length, (rx - tx_image).norm(), 1e-12);
  EXPECT_NEAR(paths[0].attenuation, 0.7 / explicit_length, 1e-15);
  EXPECT_LT((paths[0].arrival - (bounce - rx).normalized()).norm(), 1e-12);
}

TEST(Synth, BounceOutsidePlateIsDropped) {
  SyntheticSceneSpec spec;
  auto plate = floor_plate();
  plate.half_width = 0.1;
  plate.half_height = 0.1;
  spec.reflectors = {plate};
  spec.tx = {-2, 0, 1};
  // Specular point at x = 1, outside the 0.2 m plate.
  EXPECT_EQ(trace_paths(spec, {4, 0, 1}).size(), 1u);
  // Specular point at the origin.
  EXPECT_EQ(trace_paths(spec, {2, 0, 1}).size(), 2u);
}

TEST(Synth, TwoBouncesBetweenParallelWalls) {
  Reflector a = floor_plate(0.5), b = floor_plate(0.8);
  b.center = {0, 0, 3};
  b.normal = {0, 0, -1};
  SyntheticSceneSpec spec;
  spec.reflectors = {a, b};
  spec.tx = {0, 0, 1};
  const Eigen::Vector3d rx{4, 0, 2};
  const auto paths = trace_paths(spec, rx);
  // LOS, two single bounces, floor->ceiling and ceiling->floor.
  ASSERT_EQ(paths.size(), 5u);
  for (const auto& p : paths) {
    if (p.reflectors.size() != 2) continue;
    // Nested images: TX mirrored in the first wall, then in the second.
    Eigen::Vector3d img = spec.tx;
    for (int r : p.reflectors) img = spec.reflectors[static_cast<std::size_t>(r)].mirror(img);
    EXPECT_NEAR(p.length, (rx - img).norm(), 1e-12);
    EXPECT_NEAR(p.attenuation, 0.4 / p.length, 1e-15);
    double walked = (p.bounces[0] - spec.tx).norm() + (p.bounces[1] - p.bounces[0]).norm() +
                    (rx - p.bounces[1]).norm();
    EXPECT_NEAR(walked, p.length, 1e-12);
  }
  spec.max_bounces = 1;
  EXPECT_EQ(trace_paths(spec, rx).size(), 3u);
}

TEST(Synth, ReflectedLegsAgreeWithHouseholderOnRandomConfigurations) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.2, 3.0), lateral(-2.0, 2.0);
  int single = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Eigen::Vector3d n(g(rng), g(rng), g(rng));
    n.normalize();
    Eigen::Vector3d t = n.unitOrthogonal();
    Reflector wall;
    wall.center = Eigen::Vector3d(g(rng), g(rng), g(rng));
    wall.normal = n;
    wall.tangent = t;
    wall.half_width = wall.half_height = 50.0;
    const Eigen::Vector3d w = n.cross(t);
    SyntheticSceneSpec spec;
    spec.reflectors = {wall};
    spec.tx = wall.center + u(rng) * n + lateral(rng) * t + lateral(rng) * w;
    const Eigen::Vector3d rx = wall.center + u(rng) * n + lateral(rng) * t + lateral(rng) * w;
    const auto paths = trace_paths(spec, rx);
    for (const auto& p : paths) {
      if (p.bounces.size() != 1) continue;
      ++single;
      const Eigen::Vector3d in = (p.bounces[0] - spec.tx).normalized();
      const Eigen::Vector3d out = (rx - p.bounces[0]).normalized();
      EXPECT_LT((householder(n, in) - out).norm(), 1e-9);
      EXPECT_NEAR(p.length, (rx - householder(n, spec.tx - wall.center) - wall.center).norm(), 1e-9);
      const auto ga_out = ga::reflect(ga::Versor::reflection(n), ga::Multivector::vector(in)).spatial_vector();
      EXPECT_LT((ga_out - out).norm(), 1e-9);
    }
  }
  EXPECT_EQ(single, 1000);
}

TEST(Synth, ReceiverOnReflectorPlaneThrows) {
  SyntheticSceneSpec spec;
  spec.reflectors = {floor_plate()};
  spec.tx = {0, 0, 1};
  EXPECT_THROW(trace_paths(spec, {5, 5, 0}), std::invalid_argument);
  spec.tx = {0, 0, 0};
  EXPECT_THROW(trace_paths(spec, {1, 1, 1}), std::invalid_argument);
}

TEST(Synth, RejectsBadSpecs) {
  SyntheticSceneSpec spec;
  spec.line_of_sight = false;
  spec.rx = {{1, 0, 0}};
  EXPECT_THROW(synth_generate(spec), std::invalid_argument);
  auto bad = floor_plate();
  bad.attenuation = 1.5;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = floor_plate();
  bad.tangent = {0, 0, 1};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Synth, ReflectorSamplesLieOnTheSurface) {
  auto plate = floor_plate();
  plate.half_width = 1.0;
  plate.half_height = 0.5;
  const Reflector plates[] = {plate};
  const auto pts = sample_reflectors(plates, 0.25);
  EXPECT_EQ(pts.size(), 9u * 5u);
  for (const auto& p : pts) {
    EXPECT_TRUE(plate.contains(p));
    EXPECT_NEAR(plate.signed_distance(p), 0.0, 1e-15);
  }
}

TEST(Synth, SnapshotIsCoherentSumOfPaths) {
  const auto array = signal::ArrayGeometry::uniform_linear(4);
  PropagationPath a, b;
  a.arrival = {1, 0, 0};
  a.attenuation = 0.5;
  a.phase = 0.3;
  b.arrival = {0, 1, 0};
  b.attenuation = 0.25;
  b.phase = 2.0;
  const PropagationPath both[] = {a, b};
  const auto y = array_snapshot(array, both);
  const auto ya = array_snapshot(array, std::span<const PropagationPath>(&a, 1));
  const auto yb = array_snapshot(array, std::span<const PropagationPath>(&b, 1));
  for (std::size_t k = 0; k < y.size(); ++k) {
    EXPECT_LT(std::abs(y[k] - ya[k] - yb[k]), 1e-15);
    EXPECT_NEAR(std::abs(ya[k]), 0.5, 1e-15);
  }
}

}  // namespace
}  // namespace rfsplat::train
