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
#include <filesystem>
#include <fstream>
#include <random>

#include "oracles/finite_diff.hpp"
#include "oracles/ssim_oracle.hpp"
#include "rfsplat/autodiff/ops.hpp"
#include "rfsplat/errors.hpp"
#include "rfsplat/train/adam.hpp"
#include "rfsplat/train/loss.hpp"
#include "rfsplat/train/ssim.hpp"
#include "rfsplat/train/trainer.hpp"

namespace rfsplat::train {
namespace {

ad::Tensor random_grid(std::mt19937_64& rng, int rows, int cols, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  ad::Tensor t(rows, cols);
  for (double& v : t.data) v = u(rng);
  return t;
}

TEST(Ssim, SelfSimilarityIsExactlyOne) {
  std::mt19937_64 rng(1);
  for (auto [r, c] : {std::pair{32, 32}, std::pair{360, 90}, std::pair{3, 5}}) {
    const auto a = random_grid(rng, r, c, -3.0, 5.0);
    EXPECT_EQ(ssim(a.data, a.data, r, c, 8.0), 1.0);
  }
}

TEST(Ssim, ConstantGridsMatchClosedForm) {
  const double c = 0.3, range = 2.0;
  const std::vector<double> a(20 * 16, c), b(20 * 16, c + range);
  const double c1 = std::pow(0.01 * range, 2);
  const double expected = (2 * c * (c + range) + c1) / (c * c + (c + range) * (c + range) + c1);
  const double got = ssim(a, b, 20, 16, range);
  EXPECT_LT(got, 1.0);
  EXPECT_NEAR(got, expected, 1e-12);
}

TEST(Ssim, MatchesDirectWindowedReference) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_grid(rng, 32, 32), b = random_grid(rng, 32, 32);
    EXPECT_NEAR(ssim(a.data, b.data, 32, 32, 1.0), oracle::naive_ssim(a.data, b.data, 32, 32, 1.0), 1e-12);
  }
  // Grids smaller than the window.
  const auto a = random_grid(rng, 8, 6), b = random_grid(rng, 8, 6);
  EXPECT_NEAR(ssim(a.data, b.data, 8, 6, 1.0), oracle::naive_ssim(a.data, b.data, 8, 6, 1.0), 1e-12);
}

TEST(Ssim, Symmetric) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_grid(rng, 17, 23), b = random_grid(rng, 17, 23);
    EXPECT_NEAR(ssim(a.data, b.data, 17, 23, 1.0), ssim(b.data, a.data, 17, 23, 1.0), 1e-12);
  }
}

TEST(Ssim, RejectsBadInput) {
  const std::vector<double> a(12, 0.0), b(10, 0.0);
  EXPECT_THROW(ssim(a, b, 3, 4, 1.0), std::invalid_argument);
  EXPECT_THROW(ssim(a, a, 3, 4, 0.0), std::invalid_argument);
  SsimConfig even;
  even.window = 10;
  EXPECT_THROW(ssim(a, a, 3, 4, 1.0, even), std::invalid_argument);
}

TEST(Ssim, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(4);
  for (auto [r, c] : {std::pair{8, 8}, std::pair{14, 9}}) {
    const auto a = random_grid(rng, r, c), b = random_grid(rng, r, c);
    const auto g = oracle::check_gradient(
        [](ad::Tape& t, const std::vector<ad::Var>& v) { return ssim(t, v[0], v[1], 1.0); }, {a, b});
    for (int i = 0; i < 2; ++i) {
      for (std::size_t k = 0; k < a.data.size(); ++k) {
        EXPECT_NEAR(g.analytic[i].data[k], g.numeric[i].data[k], 1e-8);
      }
    }
  }
}

double reference_loss(const std::vector<ad::Tensor>& pred, const std::vector<ad::Tensor>& gt,
                      const std::vector<double>& d_attn, double beta, double alpha) {
  double lo = 1e300, hi = -1e300;
  for (const auto& g : gt) {
    for (double v : g.data) lo = std::min(lo, v), hi = std::max(hi, v);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    double mae = 0.0;
    for (std::size_t k = 0; k < pred[i].data.size(); ++k) mae += std::abs(pred[i].data[k] - gt[i].data[k]);
    mae /= static_cast<double>(pred[i].data.size());
    const double s = oracle::naive_ssim(gt[i].data, pred[i].data, gt[i].rows, gt[i].cols, hi - lo);
    total += beta * mae + (1 - beta) * (1 - s);
  }
  double reg = 0.0;
  for (double d : d_attn) reg += d * d;
  return total / static_cast<double>(pred.size()) + alpha * reg;
}

TEST(Loss, PerfectFitIsZero) {
  std::mt19937_64 rng(5);
  const std::vector<ad::Tensor> gt{random_grid(rng, 12, 10), random_grid(rng, 12, 10)};
  const std::vector<double> zeros(7, 0.0);
  EXPECT_EQ(loss(gt, gt, zeros, LossConfig{}), 0.0);
}

TEST(Loss, BetaOneIsMeanAbsoluteError) {
  std::mt19937_64 rng(6);
  std::vector<ad::Tensor> gt, pred;
  for (int i = 0; i < 3; ++i) {
    gt.push_back(random_grid(rng, 9, 7));
    pred.push_back(random_grid(rng, 9, 7));
  }
  LossConfig cfg;
  cfg.beta = 1.0;
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    double m = 0.0;
    for (std::size_t k = 0; k < gt[i].data.size(); ++k) m += std::abs(gt[i].data[k] - pred[i].data[k]);
    total += m / static_cast<double>(gt[i].data.size());
  }
  EXPECT_EQ(loss(pred, gt, std::vector<double>(4, 0.0), cfg), total / 3.0);
}

TEST(Loss, MatchesScalarReference) {
  std::mt19937_64 rng(7);
  std::vector<ad::Tensor> gt, pred;
  for (int i = 0; i < 3; ++i) {
    gt.push_back(random_grid(rng, 16, 12));
    pred.push_back(random_grid(rng, 16, 12));
  }
  const std::vector<double> d{0.3, -0.2, 0.05};
  LossConfig cfg;
  cfg.alpha_reg = 0.01;
  EXPECT_NEAR(loss(pred, gt, d, cfg), reference_loss(pred, gt, d, 0.8, 0.01), 1e-12);
  EXPECT_THROW(loss(std::vector<ad::Tensor>{}, std::vector<ad::Tensor>{}, d, cfg), std::invalid_argument);
}

TEST(Loss, NonNegativeOnSharedRange) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<ad::Tensor> gt{random_grid(rng, 10, 10)}, pred{random_grid(rng, 10, 10)};
    EXPECT_GE(loss(pred, gt, std::vector<double>{0.1}, LossConfig{}), 0.0);
  }
}

TEST(Loss, TapeMatchesPlainAndFiniteDifferences) {
  std::mt19937_64 rng(9);
  const std::vector<ad::Tensor> gt{random_grid(rng, 9, 8), random_grid(rng, 9, 8)};
  const auto p0 = random_grid(rng, 9, 8), p1 = random_grid(rng, 9, 8);
  ad::Tensor d(4, 1, {0.2, -0.1, 0.4, 0.0});
  LossConfig cfg;
  cfg.alpha_reg = 0.05;
  const auto fn = [&](ad::Tape& t, const std::vector<ad::Var>& v) {
    const ad::Var preds[] = {v[0], v[1]};
    return loss(t, preds, gt, v[2], cfg);
  };
  EXPECT_NEAR(oracle::evaluate(fn, {p0, p1, d}),
              loss(std::vector<ad::Tensor>{p0, p1}, gt, d.data, cfg), 1e-14);
  const auto g = oracle::check_gradient(fn, {p0, p1, d});
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < g.analytic[i].data.size(); ++k) {
      EXPECT_NEAR(g.analytic[i].data[k], g.numeric[i].data[k], 1e-7);
    }
  }
}

TEST(Adam, MatchesScalarReference) {
  ad::ParameterSet p;
  p.add("x", ad::Tensor(1, 2, {1.0, -2.0}));
  Adam opt;
  double m[2] = {0, 0}, v[2] = {0, 0}, x[2] = {1.0, -2.0};
  for (int step = 1; step <= 5; ++step) {
    const ad::Tensor g(1, 2, {2.0 * p[0].data[0], std::sin(p[0].data[1])});
    const double gs[2] = {2.0 * x[0], std::sin(x[1])};
    opt.step(p, std::span<const ad::Tensor>(&g, 1));
    for (int k = 0; k < 2; ++k) {
      m[k] = 0.9 * m[k] + 0.1 * gs[k];
      v[k] = 0.999 * v[k] + 0.001 * gs[k] * gs[k];
      const double mh = m[k] / (1 - std::pow(0.9, step)), vh = v[k] / (1 - std::pow(0.999, step));
      x[k] -= 1e-3 * mh / (std::sqrt(vh) + 1e-8);
      EXPECT_NEAR(p[0].data[static_cast<std::size_t>(k)], x[k], 1e-15);
    }
  }
  EXPECT_EQ(opt.steps(), 5);
  const ad::Tensor wrong(2, 2);
  EXPECT_THROW(opt.step(p, std::span<const ad::Tensor>(&wrong, 1)), std::invalid_argument);
}

TEST(Adam, FirstStepMovesByLearningRate) {
  ad::ParameterSet p;
  p.add("x", ad::Tensor(1, 3, {0.5, 0.5, 0.5}));
  Adam opt;
  const ad::Tensor g(1, 3, {3.0, -0.01, 0.0});
  opt.step(p, std::span<const ad::Tensor>(&g, 1));
  EXPECT_NEAR(p[0].data[0], 0.5 - 1e-3, 1e-9);
  EXPECT_NEAR(p[0].data[1], 0.5 + 1e-3, 1e-8);
  EXPECT_EQ(p[0].data[2], 0.5);
}

TEST(Shuffle, PermutationAndDeterminism) {
  const auto a = shuffled_indices(50, 42), b = shuffled_indices(50, 42), c = shuffled_indices(50, 43);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[static_cast<std::size_t>(i)], i);
  EXPECT_TRUE(shuffled_indices(0, 1).empty());
}

// A few-primitive model small enough for exhaustive checks.
ModelConfig small_config() {
  ModelConfig c;
  c.encoder.blocks = 1;
  c.encoder.channels = 2;
  c.encoder.aux = 4;
  c.encoder.frequencies = 2;
  c.mapping.att_width = 8;
  c.mapping.att_layers = 2;
  c.mapping.att_skip = 2;
  c.mapping.sig_width = 8;
  c.mapping.sig_layers = 1;
  c.mapping.head_width = 4;
  c.anchors = 3;
  c.sh_degree = 1;
  return c;
}

scene::Scene small_scene(std::mt19937_64& rng, int n = 5) {
  std::uniform_real_distribution<double> u(-0.5, 0.5), o(0.2, 0.8);
  scene::Scene s;
  s.sh_degree = 1;
  s.tx_position = {0.5, -1.0, 1.5};
  for (int i = 0; i < n; ++i) {
    scene::GaussianPrimitive p;
    p.position = {2.0 + u(rng), u(rng), 0.3 * u(rng)};
    p.log_scale = Eigen::Vector3d::Constant(std::log(0.3));
    p.opacity = o(rng);
    p.signal.assign(8, 0.0);
    for (double& x : p.signal) x = u(rng);
    s.primitives.push_back(p);
  }
  s.anchor_count = 3;
  return s;
}

std::vector<Sample> small_samples(const Model& truth, const RenderTarget& target, int n) {
  std::vector<Sample> out;
  std::vector<render::ReceiverPose> poses;
  for (int i = 0; i < n; ++i) {
    render::ReceiverPose p;
    p.position = {0.1 * i, 0.05 * i, 0.0};
    poses.push_back(p);
  }
  const auto preds = predict(truth, target, poses);
  for (int i = 0; i < n; ++i) out.push_back({poses[static_cast<std::size_t>(i)], preds[static_cast<std::size_t>(i)]});
  return out;
}

TEST(Model, RestoreRoundTrip) {
  std::mt19937_64 rng(10);
  const auto m = Model::create(small_scene(rng), small_config(), 3);
  const auto r = Model::restore(m.config, m.tx, m.primitives(), m.params);
  EXPECT_EQ(r.params, m.params);
  ad::ParameterSet broken = m.params;
  broken[0] = ad::Tensor(1, 1);
  EXPECT_THROW(Model::restore(m.config, m.tx, m.primitives(), broken), FormatError);
}

TEST(Model, FreshHeadsKeepRawGeometry) {
  std::mt19937_64 rng(11);
  const auto s = small_scene(rng);
  const auto m = Model::create(s, small_config(), 4);
  ad::Tape t;
  const auto f = forward(t, m, false);
  const auto& rot = t.value(f.effective.rotation);
  const auto& ls = t.value(f.effective.log_scale);
  for (int i = 0; i < s.size(); ++i) {
    EXPECT_NEAR(rot(i, 0), 1.0, 1e-15);
    EXPECT_EQ(ls(i, 0), s.primitives[static_cast<std::size_t>(i)].log_scale[0]);
    EXPECT_EQ(t.value(f.d_attn)(i, 0), 0.0);
  }
}

TEST(Training, ZeroEpochsLeavesModelUnchanged) {
  std::mt19937_64 rng(12);
  auto m = Model::create(small_scene(rng), small_config(), 5);
  const auto before = m.params;
  const auto target = RenderTarget::plane(8, 8);
  const auto samples = small_samples(m, target, 2);
  TrainConfig cfg;
  cfg.epochs = 0;
  const auto res = train(m, target, samples, cfg);
  EXPECT_TRUE(res.epoch_loss.empty());
  EXPECT_TRUE(res.steps.empty());
  EXPECT_EQ(m.params, before);
}

TEST(Training, FixedSeedGivesIdenticalTrajectories) {
  std::mt19937_64 rng(13);
  const auto truth = Model::create(small_scene(rng), small_config(), 6);
  const auto target = RenderTarget::plane(8, 8);
  const auto samples = small_samples(truth, target, 5);
  std::mt19937_64 rng2(14);
  const auto init = small_scene(rng2);
  TrainConfig cfg;
  cfg.epochs = 4;
  cfg.batch = 2;
  auto a = Model::create(init, small_config(), 7);
  auto b = Model::create(init, small_config(), 7);
  const auto ra = train(a, target, samples, cfg);
  const auto rb = train(b, target, samples, cfg);
  ASSERT_EQ(ra.steps.size(), 12u);
  for (std::size_t k = 0; k < ra.steps.size(); ++k) EXPECT_EQ(ra.steps[k].loss, rb.steps[k].loss);
  EXPECT_EQ(ra.epoch_loss, rb.epoch_loss);
  EXPECT_EQ(a.params, b.params);
  cfg.seed = 99;
  auto c = Model::create(init, small_config(), 7);
  const auto rc = train(c, target, samples, cfg);
  EXPECT_NE(rc.steps[1].loss, ra.steps[1].loss);
}

TEST(Training, ConstraintsHoldAfterUpdates) {
  std::mt19937_64 rng(15);
  const auto truth = Model::create(small_scene(rng), small_config(), 8);
  const auto target = RenderTarget::plane(8, 8);
  const auto samples = small_samples(truth, target, 3);
  auto m = Model::create(small_scene(rng), small_config(), 9);
  TrainConfig cfg;
  cfg.epochs = 5;
  cfg.adam.lr = 0.05;
  train(m, target, samples, cfg);
  const auto& rot = m.params[m.scene_slots.rotation];
  for (int i = 0; i < rot.rows; ++i) {
    double n = 0.0;
    for (int k = 0; k < 4; ++k) n += rot(i, k) * rot(i, k);
    EXPECT_NEAR(std::sqrt(n), 1.0, 1e-9);
  }
  for (double o : m.params[m.scene_slots.opacity].data) {
    EXPECT_GE(o, 0.0);
    EXPECT_LE(o, 1.0);
  }
  EXPECT_NO_THROW(m.scene().validate());
}

TEST(Training, DivergenceDumpsState) {
  std::mt19937_64 rng(16);
  auto m = Model::create(small_scene(rng), small_config(), 10);
  const auto target = RenderTarget::plane(8, 8);
  auto samples = small_samples(m, target, 1);
  samples[0].target.data[3] = std::nan("");
  TrainConfig cfg;
  cfg.dump_path = (std::filesystem::temp_directory_path() / "rfsplat_divergence.json").string();
  std::filesystem::remove(cfg.dump_path);
  EXPECT_THROW(train(m, target, samples, cfg), DivergenceError);
  std::ifstream in(cfg.dump_path);
  ASSERT_TRUE(in.good());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_NE(text.find("\"step\""), std::string::npos);
  EXPECT_NE(text.find("scene.position"), std::string::npos);
}

TEST(Training, RejectsMismatchedTargets) {
  std::mt19937_64 rng(17);
  auto m = Model::create(small_scene(rng), small_config(), 11);
  std::vector<Sample> samples(1);
  samples[0].target = ad::Tensor(4, 4);
  EXPECT_THROW(train(m, RenderTarget::plane(8, 8), samples, TrainConfig{}), std::invalid_argument);
  EXPECT_THROW(train(m, RenderTarget::plane(8, 8), std::span<const Sample>(), TrainConfig{}),
               std::invalid_argument);
}

TEST(Training, PipelineGradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(18);
  const auto truth = Model::create(small_scene(rng), small_config(), 12);
  const auto target = RenderTarget::plane(8, 8);
  const auto samples = small_samples(truth, target, 1);
  auto m = Model::create(small_scene(rng), small_config(), 13);
  // Randomize the zero-initialized heads so every branch carries gradient.
  std::normal_distribution<double> g(0.0, 0.05);
  for (int s = 0; s < m.params.size(); ++s) {
    if (m.params.name(s).rfind("mapping.", 0) == 0) {
      for (double& v : m.params[s].data) v += g(rng);
    }
  }
  const LossConfig lc;
  const auto eval = [&](const ad::ParameterSet& p, std::vector<ad::Tensor>* grads) {
    Model mm = m;
    mm.params = p;
    ad::Tape t;
    const auto f = forward(t, mm, grads != nullptr);
    const ad::Var pred = observe(t, f, mm, target, samples[0].pose);
    const ad::Var l = loss(t, std::span<const ad::Var>(&pred, 1), std::span<const ad::Tensor>(&samples[0].target, 1), f.d_attn, lc);
    if (grads) *grads = ad::gradients(t, l, f.bound);
    return t.value(l).item();
  };
  std::vector<ad::Tensor> grads;
  eval(m.params, &grads);
  std::uniform_int_distribution<int> pick_slot(0, m.params.size() - 1);
  int checked = 0;
  while (checked < 40) {
    const int s = pick_slot(rng);
    std::uniform_int_distribution<int> pick(0, m.params[s].size() - 1);
    const int k = pick(rng);
    auto hi = m.params, lo = m.params;
    hi[s].data[static_cast<std::size_t>(k)] += 1e-6;
    lo[s].data[static_cast<std::size_t>(k)] -= 1e-6;
    const double fd = (eval(hi, nullptr) - eval(lo, nullptr)) / 2e-6;
    const double an = grads[static_cast<std::size_t>(s)].data[static_cast<std::size_t>(k)];
    EXPECT_NEAR(an, fd, 1e-6 + 1e-4 * std::abs(fd)) << m.params.name(s) << "[" << k << "]";
    ++checked;
  }
}

}  // namespace
}  // namespace rfsplat::train
