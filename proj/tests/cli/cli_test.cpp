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


// Runs the rfsplat executable end to end in a scratch directory.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "rfsplat/io/dataset.hpp"
#include "rfsplat/train/ssim.hpp"

namespace fs = std::filesystem;

namespace rfsplat {
namespace {

const fs::path kConfigs = RFSPLAT_CONFIG_DIR;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rfsplat_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Exit status of `rfsplat args`, with output captured in dir_/out.txt.
  int run(const std::string& args) const {
    const std::string cmd = "\"" RFSPLAT_CLI "\" " + args + " > \"" + (dir_ / "out.txt").string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string output() const {
    std::ifstream in(dir_ / "out.txt");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::string p(const std::string& rel) const { return "\"" + (dir_ / rel).string() + "\""; }

  fs::path dir_;
};

TEST_F(Cli, UnknownSubcommandOrFlagFails) {
  EXPECT_NE(run("frobnicate"), 0);
  EXPECT_NE(run("train --no-such-flag 1"), 0);
  EXPECT_NE(run(""), 0);
}

TEST_F(Cli, FailuresPrintOneLineCause) {
  std::ofstream(dir_ / "broken.json") << "{not json";
  EXPECT_EQ(run("eval --data " + p("broken.json") + " --pred " + p("broken.json")), 1);
  const auto out = output();
  EXPECT_EQ(out.rfind("rfsplat: ", 0), 0u) << out;
  EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 1) << out;
}

TEST_F(Cli, SynthWritesDataset) {
  ASSERT_EQ(run("synth --spec \"" + (kConfigs / "demo_scene.json").string() + "\" --out " + p("data")), 0) << output();
  for (const char* f : {"manifest.json", "rssi.csv", "points.csv", "scene_spec.json", "spectra/00000.csv", "spectra/00063.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / "data" / f)) << f;
  }
  const auto m = io::load_spectrum_dataset(dir_ / "data/manifest.json");
  EXPECT_EQ(m.records.size(), 64u);
}

TEST_F(Cli, EvalSelfTestIsPerfect) {
  ASSERT_EQ(run("synth --spec \"" + (kConfigs / "demo_scene.json").string() + "\" --out " + p("data")), 0) << output();
  ASSERT_EQ(run("eval --data " + p("data/manifest.json") + " --pred " + p("data/manifest.json") + " --out " +
                p("spectrum.json")),
            0)
      << output();
  ASSERT_EQ(run("eval --data " + p("data/rssi.csv") + " --pred " + p("data/rssi.csv") + " --out " + p("rssi.json")), 0)
      << output();
  std::ifstream s(dir_ / "spectrum.json"), r(dir_ / "rssi.json");
  const auto js = nlohmann::json::parse(s), jr = nlohmann::json::parse(r);
  EXPECT_EQ(js["mean_ssim"].get<double>(), 1.0);
  EXPECT_EQ(js["median_mae"].get<double>(), 0.0);
  for (double q : js["cdf"]["values"]) EXPECT_EQ(q, 1.0);
  EXPECT_EQ(jr["median_mae_db"].get<double>(), 0.0);
}

TEST_F(Cli, TrainThenRenderReproducesTheOverfitSpectrum) {
  ASSERT_EQ(run("synth --spec \"" + (kConfigs / "overfit_room.json").string() + "\" --out " + p("data")), 0) << output();
  ASSERT_EQ(run("train --data " + p("data/manifest.json") + " --split all --epochs 300 --batch 1 --quiet --out " +
                p("run")),
            0)
      << output();
  EXPECT_TRUE(fs::exists(dir_ / "run/log.jsonl"));
  ASSERT_EQ(run("render --checkpoint " + p("run/checkpoint.json") + " --pose 3.3,0.4,1.3 --out " + p("render/pose")), 0)
      << output();
  EXPECT_TRUE(fs::exists(dir_ / "render/pose.png"));
  const auto pred = io::read_spectrum_csv(dir_ / "render/pose.csv");
  const auto gt = io::load_spectrum_dataset(dir_ / "data/manifest.json").records.front().spectrum;
  ASSERT_TRUE(gt);
  const auto gv = gt->values(), pv = pred.values();
  const double range = *std::max_element(gv.begin(), gv.end()) - *std::min_element(gv.begin(), gv.end());
  const double s = train::ssim(gv, pv, 360, 90, range);
  std::printf("rendered spectrum SSIM %.4f\n", s);
  EXPECT_GT(s, 0.95);
}

}  // namespace
}  // namespace rfsplat
