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
#include <random>

#include "oracles/finite_diff.hpp"
#include "rfsplat/autodiff/dual.hpp"
#include "rfsplat/autodiff/ops.hpp"
#include "rfsplat/errors.hpp"

namespace rfsplat::ad {
namespace {

Tensor random_tensor(std::mt19937_64& rng, int r, int c, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Tensor t(r, c);
  for (double& x : t.data) x = u(rng);
  return t;
}

void expect_close(const oracle::GradientPair& g, double tol = 1e-6) {
  ASSERT_EQ(g.analytic.size(), g.numeric.size());
  for (std::size_t i = 0; i < g.analytic.size(); ++i) {
    for (std::size_t k = 0; k < g.analytic[i].data.size(); ++k) {
      const double n = g.numeric[i].data[k];
      EXPECT_NEAR(g.analytic[i].data[k], n, tol * std::max(1.0, std::abs(n)))
          << "input " << i << " coord " << k;
    }
  }
}

// Weighted sum so every output element gets a distinct upstream gradient.
Var probe(Tape& t, Var x) {
  const Tensor& v = t.value(x);
  Tensor w(v.rows, v.cols);
  for (int k = 0; k < w.size(); ++k) w.data[static_cast<std::size_t>(k)] = std::sin(1.0 + k);
  return sum(t, mul(t, x, t.constant(w)));
}

TEST(Tape, StateErrors) {
  Tape t;
  EXPECT_THROW(t.backward(Var{0}), StateError);
  const Var x = t.leaf(Tensor::scalar(2.0));
  EXPECT_THROW(t.grad(x), StateError);
  const Var y = square(t, x);
  t.backward(y);
  EXPECT_EQ(t.grad(x).item(), 4.0);
  EXPECT_THROW(t.backward(y), StateError);
  EXPECT_THROW(t.value(Var{99}), StateError);
}

TEST(Tape, UnusedLeafHasZeroGradient) {
  Tape t;
  const Var x = t.leaf(Tensor(2, 2, 1.0));
  const Var y = t.leaf(Tensor::scalar(3.0));
  t.backward(square(t, y));
  EXPECT_EQ(t.grad(x), Tensor(2, 2, 0.0));
}

TEST(Tape, NonScalarBackwardNeedsSeed) {
  Tape t;
  const Var x = t.leaf(Tensor(1, 2, 1.0));
  EXPECT_THROW(t.backward(scale(t, x, 2.0)), std::invalid_argument);
}

TEST(Tape, ConstantsDropTheirBackward) {
  Tape t;
  const Var a = t.constant(Tensor::scalar(1.0));
  const Var b = exp(t, a);
  EXPECT_FALSE(t.requires_grad(b));
}

TEST(Ops, ShapeErrors) {
  Tape t;
  const Var a = t.leaf(Tensor(2, 3));
  const Var b = t.leaf(Tensor(2, 2));
  EXPECT_THROW(matmul(t, a, b), std::invalid_argument);
  EXPECT_THROW(add(t, a, b), std::invalid_argument);
  EXPECT_THROW(slice_cols(t, a, 2, 2), std::invalid_argument);
  EXPECT_THROW(reshape(t, a, 4, 2), std::invalid_argument);
}

TEST(Ops, ForwardValues) {
  Tape t;
  const Var a = t.constant(Tensor(2, 2, {1, 2, 3, 4}));
  const Var b = t.constant(Tensor(2, 2, {5, 6, 7, 8}));
  EXPECT_EQ(t.value(matmul(t, a, b)), Tensor(2, 2, {19, 22, 43, 50}));
  EXPECT_EQ(t.value(sum(t, a)).item(), 10.0);
  EXPECT_EQ(t.value(mean(t, a)).item(), 2.5);
  EXPECT_EQ(t.value(mean_abs_diff(t, a, b)).item(), 4.0);
  const Tensor sm = t.value(softmax_rows(t, t.constant(Tensor(1, 3, {0.0, 0.0, 0.0}))));
  for (double x : sm.data) EXPECT_NEAR(x, 1.0 / 3.0, 1e-15);
  const Var parts[] = {a, b};
  EXPECT_EQ(t.value(concat_cols(t, parts)), Tensor(2, 4, {1, 2, 5, 6, 3, 4, 7, 8}));
  const int rows[] = {1, 1, 0};
  EXPECT_EQ(t.value(gather_rows(t, a, rows)), Tensor(3, 2, {3, 4, 3, 4, 1, 2}));
}

struct OpCase {
  const char* name;
  std::vector<std::pair<int, int>> shapes;
  oracle::TapeFunction f;
  double lo = -1.0;
};

class OpGradient : public ::testing::TestWithParam<OpCase> {};

TEST_P(OpGradient, MatchesFiniteDifferences) {
  std::mt19937_64 rng(42);
  const auto& c = GetParam();
  std::vector<Tensor> inputs;
  for (auto [r, k] : c.shapes) inputs.push_back(random_tensor(rng, r, k, c.lo, 1.0));
  expect_close(oracle::check_gradient(c.f, inputs));
}

using V = std::vector<Var>;
INSTANTIATE_TEST_SUITE_P(
    Ad, OpGradient,
    ::testing::Values(
        OpCase{"matmul", {{3, 4}, {4, 2}}, [](Tape& t, const V& v) { return probe(t, matmul(t, v[0], v[1])); }},
        OpCase{"add", {{2, 3}, {2, 3}}, [](Tape& t, const V& v) { return probe(t, add(t, v[0], v[1])); }},
        OpCase{"sub", {{2, 3}, {2, 3}}, [](Tape& t, const V& v) { return probe(t, sub(t, v[0], v[1])); }},
        OpCase{"mul", {{2, 3}, {2, 3}}, [](Tape& t, const V& v) { return probe(t, mul(t, v[0], v[1])); }},
        OpCase{"add_row", {{3, 4}, {1, 4}}, [](Tape& t, const V& v) { return probe(t, add_row(t, v[0], v[1])); }},
        OpCase{"linear", {{3, 4}, {4, 2}, {1, 2}}, [](Tape& t, const V& v) { return probe(t, linear(t, v[0], v[1], v[2])); }},
        OpCase{"scale", {{2, 2}}, [](Tape& t, const V& v) { return probe(t, scale(t, add_scalar(t, v[0], 0.5), -3.0)); }},
        OpCase{"sigmoid", {{2, 3}}, [](Tape& t, const V& v) { return probe(t, sigmoid(t, v[0])); }},
        OpCase{"tanh", {{2, 3}}, [](Tape& t, const V& v) { return probe(t, tanh(t, v[0])); }},
        OpCase{"silu", {{2, 3}}, [](Tape& t, const V& v) { return probe(t, silu(t, v[0])); }},
        OpCase{"exp", {{2, 3}}, [](Tape& t, const V& v) { return probe(t, exp(t, v[0])); }},
        OpCase{"square", {{2, 3}}, [](Tape& t, const V& v) { return probe(t, square(t, v[0])); }},
        OpCase{"clamp", {{3, 3}}, [](Tape& t, const V& v) { return probe(t, clamp(t, v[0], -0.5, 0.5)); }},
        OpCase{"mean", {{3, 3}}, [](Tape& t, const V& v) { return mean(t, square(t, v[0])); }},
        OpCase{"mean_abs_diff", {{3, 3}, {3, 3}}, [](Tape& t, const V& v) { return mean_abs_diff(t, v[0], v[1]); }},
        OpCase{"softmax_rows", {{3, 5}}, [](Tape& t, const V& v) { return probe(t, softmax_rows(t, v[0])); }},
        OpCase{"normalize_rows", {{3, 4}}, [](Tape& t, const V& v) { return probe(t, normalize_rows(t, v[0])); }},
        OpCase{"concat_slice", {{2, 3}, {2, 2}}, [](Tape& t, const V& v) {
          const Var c = concat_cols(t, v);
          return probe(t, slice_cols(t, c, 1, 3));
        }},
        OpCase{"concat_rows", {{2, 3}, {1, 3}}, [](Tape& t, const V& v) { return probe(t, concat_rows(t, v)); }},
        OpCase{"transpose", {{2, 3}}, [](Tape& t, const V& v) { return probe(t, transpose(t, v[0])); }},
        OpCase{"gather", {{3, 2}}, [](Tape& t, const V& v) {
          const int rows[] = {2, 0, 2, 1};
          return probe(t, gather_rows(t, v[0], rows));
        }},
        OpCase{"broadcast", {{1, 3}}, [](Tape& t, const V& v) { return probe(t, broadcast_rows(t, v[0], 4)); }},
        OpCase{"reshape", {{2, 6}}, [](Tape& t, const V& v) { return probe(t, reshape(t, v[0], 3, 4)); }},
        OpCase{"reuse", {{2, 2}}, [](Tape& t, const V& v) {
          // One node feeding several consumers accumulates gradients.
          return probe(t, mul(t, v[0], add(t, v[0], exp(t, v[0]))));
        }}),
    [](const auto& info) { return std::string(info.param.name); });

TEST(Dual, MatchesClosedFormDerivatives) {
  using D = Dual<2>;
  const D x = D::variable(0.7, 0);
  const D y = D::variable(-0.3, 1);
  const D f = sin(x) * exp(y) + atan2(y, x) / sqrt(x * x + 1.0) - log(x) * tan(y) + asinh(x * y);
  const double fx = std::cos(0.7) * std::exp(-0.3) + 0.3 / (0.49 + 0.09) / std::sqrt(1.49) -
                    std::atan2(-0.3, 0.7) * 0.7 / std::pow(1.49, 1.5) - std::tan(-0.3) / 0.7 +
                    -0.3 / std::sqrt(1.0 + 0.21 * 0.21);
  const double fy = std::sin(0.7) * std::exp(-0.3) + 0.7 / (0.49 + 0.09) / std::sqrt(1.49) -
                    std::log(0.7) / std::pow(std::cos(-0.3), 2) + 0.7 / std::sqrt(1.0 + 0.21 * 0.21);
  EXPECT_NEAR(f.d[0], fx, 1e-12);
  EXPECT_NEAR(f.d[1], fy, 1e-12);
}

}  // namespace
}  // namespace rfsplat::ad
