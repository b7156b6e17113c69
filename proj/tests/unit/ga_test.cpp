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

#include <Eigen/Geometry>
#include <cmath>
#include <random>

#include "oracles/ga_oracles.hpp"
#include "rfsplat/errors.hpp"
#include "rfsplat/ga/multivector.hpp"
#include "rfsplat/ga/versor.hpp"

namespace rfsplat::ga {
namespace {

const Signature kPga = Signature::projective();
const Signature kSta = Signature::minkowski();

class BothSignatures : public ::testing::TestWithParam<Signature> {};
INSTANTIATE_TEST_SUITE_P(Ga, BothSignatures, ::testing::Values(kPga, kSta),
                         [](const auto& info) { return info.param.q == 0 ? "p301" : "p310"; });

TEST(Signature, Validation) {
  EXPECT_NO_THROW(Signature(3, 0, 1));
  EXPECT_NO_THROW(Signature(3, 1, 0));
  EXPECT_THROW(Signature(3, 0, 0), std::invalid_argument);
  EXPECT_THROW(Signature(-1, 4, 1), std::invalid_argument);
  EXPECT_EQ(Signature(), kPga);
}

TEST(Blades, OrderAndGrades) {
  EXPECT_EQ(blade_name(kE12), "e12");
  EXPECT_EQ(blade_name(kE234), "e234");
  const int grades[] = {0, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 4};
  for (int b = 0; b < kBladeCount; ++b) {
    EXPECT_EQ(blade_grade(b), grades[b]);
    EXPECT_EQ(blade_from_mask(blade_mask(b)), b);
  }
  EXPECT_TRUE(blade_has_e4(kE14));
  EXPECT_FALSE(blade_has_e4(kE123));
}

TEST(Product, BasisExamples) {
  EXPECT_EQ(Multivector::blade(kE1) * Multivector::blade(kE1), Multivector::scalar(1.0));
  EXPECT_EQ(Multivector::blade(kE1) * Multivector::blade(kE2), Multivector::blade(kE12));
  EXPECT_EQ(Multivector::blade(kE2) * Multivector::blade(kE1), Multivector::blade(kE12, -1.0));
  EXPECT_EQ(Multivector::blade(kE4) * Multivector::blade(kE4), Multivector::scalar(0.0));
  const auto e4 = Multivector::blade(kE4, 1.0, kSta);
  EXPECT_EQ(e4 * e4, Multivector::scalar(-1.0, kSta));
}

TEST(Product, SignatureMismatchThrows) {
  EXPECT_THROW(Multivector::blade(kE1, 1.0, kPga) * Multivector::blade(kE1, 1.0, kSta),
               std::invalid_argument);
}

TEST_P(BothSignatures, MatchesNaiveBladeWalk) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto a = oracle::random_multivector(rng, GetParam());
    const auto b = oracle::random_multivector(rng, GetParam());
    EXPECT_LT(max_abs_diff(a * b, oracle::naive_product(a, b)), 1e-14);
  }
}

TEST_P(BothSignatures, Associative) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    const auto a = oracle::random_multivector(rng, GetParam());
    const auto b = oracle::random_multivector(rng, GetParam());
    const auto c = oracle::random_multivector(rng, GetParam());
    EXPECT_LT(max_abs_diff((a * b) * c, a * (b * c)), 1e-10);
  }
}

TEST_P(BothSignatures, VectorProductSplitsIntoInnerAndWedge) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  const Signature sig = GetParam();
  for (int i = 0; i < 200; ++i) {
    const auto a = Multivector::vector(u(rng), u(rng), u(rng), u(rng), sig);
    const auto b = Multivector::vector(u(rng), u(rng), u(rng), u(rng), sig);
    EXPECT_LT(max_abs_diff(a * b, inner(a, b) + wedge(a, b)), 1e-14);
    double metric = 0.0;
    for (int k = 0; k < 4; ++k) metric += sig.metric(k) * a[1 + k] * a[1 + k];
    EXPECT_NEAR(scalar_part(a * a), metric, 1e-14);
  }
}

TEST(Products, Examples) {
  const auto e1 = Multivector::blade(kE1), e2 = Multivector::blade(kE2);
  EXPECT_EQ(wedge(e1, e1), Multivector());
  EXPECT_EQ(inner(e1 + e2, e1), Multivector::scalar(1.0));
  EXPECT_EQ(reverse(Multivector::blade(kE12)), Multivector::blade(kE12, -1.0));
  EXPECT_EQ(reverse(Multivector::blade(kE123)), Multivector::blade(kE123, -1.0));
  EXPECT_EQ(reverse(Multivector::blade(kE1234)), Multivector::blade(kE1234));
}

TEST_P(BothSignatures, GradeProjection) {
  std::mt19937_64 rng(4);
  const auto a = oracle::random_multivector(rng, GetParam());
  Multivector sum(GetParam());
  for (int k = 0; k <= 4; ++k) {
    const auto p = grade_project(a, k);
    EXPECT_EQ(grade_project(p, k), p);
    for (int b = 0; b < kBladeCount; ++b) {
      EXPECT_EQ(p[b], blade_grade(b) == k ? a[b] : 0.0);
    }
    sum += p;
  }
  EXPECT_EQ(sum, a);
  EXPECT_EQ(reverse(reverse(a)), a);
  EXPECT_THROW(grade_project(a, 5), std::invalid_argument);
  EXPECT_THROW(grade_project(a, -1), std::invalid_argument);
}

TEST(Versor, IdentitySandwich) {
  std::mt19937_64 rng(5);
  const auto v = oracle::random_multivector(rng);
  EXPECT_LT(max_abs_diff(sandwich(Versor::identity(), v), v), 1e-15);
}

TEST(Versor, QuarterTurnTakesE1ToE2) {
  const auto r = Versor::rotor(Multivector::blade(kE12), M_PI / 2);
  EXPECT_NEAR(r.mv()[kScalar], std::cos(M_PI / 4), 1e-15);
  EXPECT_NEAR(r.mv()[kE12], -std::sin(M_PI / 4), 1e-15);
  const auto out = sandwich(r, Multivector::blade(kE1));
  EXPECT_LT(max_abs_diff(out, Multivector::blade(kE2)), 1e-15);
}

TEST(Versor, ReflectionFlipsTheNormal) {
  const auto n = Versor::reflection({1, 0, 0});
  EXPECT_LT(max_abs_diff(reflect(n, Multivector::blade(kE1)), Multivector::blade(kE1, -1.0)), 1e-15);
  EXPECT_LT(max_abs_diff(reflect(n, Multivector::blade(kE2)), Multivector::blade(kE2)), 1e-15);
  // The plain sandwich has the opposite sign.
  EXPECT_LT(max_abs_diff(reflect(n, Multivector::blade(kE2), ReflectionSign::kPlain),
                         Multivector::blade(kE2, -1.0)),
            1e-15);
}

TEST(Versor, SingularInverseThrows) {
  const Versor degenerate(Multivector::blade(kE4));
  EXPECT_THROW(degenerate.inverse(), SingularOperatorError);
  EXPECT_THROW(sandwich(degenerate, Multivector::blade(kE1)), SingularOperatorError);
  EXPECT_THROW(Versor(Multivector()).normalize(), SingularOperatorError);
}

TEST(Versor, AxisRotorMatchesMatrix) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> n(0, 1);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Vector3d axis = Eigen::Vector3d(n(rng), n(rng), n(rng)).normalized();
    const double angle = n(rng) * 2.0;
    const Eigen::Matrix3d m = Eigen::AngleAxisd(angle, axis).toRotationMatrix();
    const Eigen::Vector3d x(n(rng), n(rng), n(rng));
    const auto r = Versor::rotor_about_axis(axis, angle);
    const auto out = sandwich(r, Multivector::vector(x));
    EXPECT_LT((out.spatial_vector() - m * x).norm(), 1e-12);
    EXPECT_NEAR(std::abs(r.norm_squared()), 1.0, 1e-12);
    // Pure vector in, pure vector out.
    EXPECT_LT(max_abs_diff(out, grade_project(out, 1)), 1e-12);
  }
}

TEST(Compose, Examples) {
  const Versor ids[] = {Versor::identity(), Versor::identity(), Versor::identity()};
  EXPECT_LT(max_abs_diff(compose(ids).mv(), Multivector::scalar(1.0)), 1e-15);
  EXPECT_THROW(compose(std::span<const Versor>()), std::invalid_argument);

  const auto plane = Multivector::blade(kE12);
  const Versor pair[] = {Versor::rotor(plane, 0.4), Versor::rotor(plane, 1.1)};
  EXPECT_LT(max_abs_diff(sandwich(compose(pair), Multivector::blade(kE1)),
                         sandwich(Versor::rotor(plane, 1.5), Multivector::blade(kE1))),
            1e-14);
}

TEST(Compose, TwoReflectionsMakeARotor) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0, 1);
  const Eigen::Vector3d a = Eigen::Vector3d(n(rng), n(rng), n(rng)).normalized();
  const Eigen::Vector3d b = Eigen::Vector3d(n(rng), n(rng), n(rng)).normalized();
  const Versor mirrors[] = {Versor::reflection(a), Versor::reflection(b)};
  const Versor r = compose(mirrors);
  for (int k : {1, 3}) EXPECT_LT(max_abs_diff(grade_project(r.mv(), k), Multivector()), 1e-15);
  for (int i = 0; i < 100; ++i) {
    const auto x = Multivector::vector(n(rng), n(rng), n(rng));
    EXPECT_LT(max_abs_diff(sandwich(r, x), reflect(mirrors[0], reflect(mirrors[1], x))), 1e-12);
  }
}

TEST_P(BothSignatures, CompositionIsAHomomorphism) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n(0, 1);
  for (int i = 0; i < 200; ++i) {
    const auto a = Versor::rotor_about_axis({n(rng), n(rng), n(rng)}, n(rng), GetParam());
    const auto b = Versor::rotor_about_axis({n(rng), n(rng), n(rng)}, n(rng), GetParam());
    const auto v = oracle::random_multivector(rng, GetParam());
    const Versor ab[] = {a, b};
    EXPECT_LT(max_abs_diff(sandwich(compose(ab), v), sandwich(a, sandwich(b, v))), 1e-10);
  }
}

}  // namespace
}  // namespace rfsplat::ga
