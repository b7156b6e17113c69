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


// Single-measurement overfit on a closed room. The room's point cloud
// surrounds the receiver, so every direction of the spectrum has Gaussians
// behind it. Both tests share one 2000-step run.

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rfsplat/io/config.hpp"
#include "rfsplat/scene/scene.hpp"
#include "rfsplat/train/synth.hpp"
#include "rfsplat/train/trainer.hpp"

namespace rfsplat::train {
namespace {

class Overfit : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    std::ifstream in(std::filesystem::path(RFSPLAT_CONFIG_DIR) / "overfit_room.json");
    const auto spec = io::synth_spec_from_json(nlohmann::json::parse(in));
    const auto ds = synth_generate(spec);
    ASSERT_EQ(ds.measurements.size(), 1u);
    const auto& meas = ds.measurements.front();
    Sample s;
    s.pose.position = meas.rx;
    s.target = ad::Tensor(360, 90, std::vector<double>(meas.spectrum.values().begin(), meas.spectrum.values().end()));
    samples_ = {s};

    ModelConfig mc;
    mc.sync();
    scene::SceneDefaults d;
    d.sh_degree = mc.sh_degree;
    d.anchor_count = mc.anchors;
    Model m = Model::create(scene::init_from_point_cloud(ds.points, d, spec.tx), mc, 1);
    TrainConfig tc;
    tc.epochs = 2000;
    tc.batch = 1;
    const auto target = RenderTarget::spectrum();
    initial_ = evaluate_loss(m, target, samples_, tc.loss);
    const auto res = train(m, target, samples_, tc);
    for (const auto& r : res.steps) losses_.push_back(r.loss);
    final_ = evaluate_loss(m, target, samples_, tc.loss);
  }

  static inline std::vector<Sample> samples_;
  static inline std::vector<double> losses_;
  static inline double initial_ = 0.0, final_ = 0.0;
};

TEST_F(Overfit, FinalLossUnderOnePercentOfInitial) {
  ASSERT_EQ(losses_.size(), 2000u);
  EXPECT_EQ(losses_.front(), initial_);
  std::printf("initial loss %.6g, final loss %.6g (%.2f%%)\n", initial_, final_, 100.0 * final_ / initial_);
  EXPECT_LT(final_, 0.01 * initial_);
}

// Steps are grouped into consecutive 100-step windows from step 200 on; each
// window's mean loss must not exceed the previous window's.
TEST_F(Overfit, LossNonIncreasingOverHundredStepWindows) {
  ASSERT_EQ(losses_.size(), 2000u);
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t start = 200; start + 100 <= losses_.size(); start += 100) {
    double mean = 0.0;
    for (std::size_t k = start; k < start + 100; ++k) mean += losses_[k] / 100.0;
    EXPECT_LE(mean, prev) << "window starting at step " << start;
    prev = mean;
  }
}

}  // namespace
}  // namespace rfsplat::train
