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

#include <benchmark/benchmark.h>

#include <random>

#include "rfsplat/ga/multivector.hpp"
#include "rfsplat/signal/signal.hpp"
#include "rfsplat/train/ssim.hpp"
#include "rfsplat/train/synth.hpp"
#include "rfsplat/train/trainer.hpp"

namespace {

using namespace rfsplat;

void BM_GeometricProduct(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  ga::Multivector a, b;
  for (int i = 0; i < ga::kBladeCount; ++i) {
    a[i] = g(rng);
    b[i] = g(rng);
  }
  for (auto _ : state) {
    a = a * b;
    a *= 1.0 / (1.0 + std::abs(a[0]));
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_GeometricProduct);

void BM_AngleSpectrum(benchmark::State& state) {
  const auto geom = signal::ArrayGeometry::cubic(static_cast<int>(state.range(0)));
  std::vector<signal::Complex> y(geom.size(), signal::Complex(1.0, 0.5));
  for (auto _ : state) benchmark::DoNotOptimize(signal::angle_power_spectrum(geom, y));
}
BENCHMARK(BM_AngleSpectrum)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_SsimSpectrumGrid(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u;
  std::vector<double> a(360 * 90), b(360 * 90);
  for (auto& v : a) v = u(rng);
  for (auto& v : b) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(train::ssim(a, b, 360, 90, 1.0));
}
BENCHMARK(BM_SsimSpectrumGrid)->Unit(benchmark::kMillisecond);

// Wall-and-transmitter scene used by the end-to-end checks.
struct DemoScene {
  train::Model model;
  train::RenderTarget target;
  std::vector<train::Sample> samples;

  explicit DemoScene(train::Observation kind) {
    train::SyntheticSceneSpec spec;
    train::Reflector wall;
    wall.center = {0, 2, 1.5};
    wall.normal = {0, -1, 0};
    wall.tangent = {1, 0, 0};
    wall.half_width = 6;
    wall.half_height = 1.5;
    wall.attenuation = 0.6;
    spec.reflectors = {wall};
    spec.tx = {0, 0, 2};
    spec.sample_spacing = 0.5;
    for (int i = 0; i < 4; ++i) spec.rx.push_back({3.0 + 0.3 * i, -0.5 + 0.25 * i, 1.0});
    const auto ds = train::synth_generate(spec);
    scene::SceneDefaults d;
    const auto init = scene::init_from_point_cloud(ds.points, d, spec.tx);
    model = train::Model::create(init, train::ModelConfig{}, 1);
    target = kind == train::Observation::kSpectrum ? train::RenderTarget::spectrum()
                                                   : train::RenderTarget::rssi_plane(64, 32);
    for (const auto& m : ds.measurements) {
      train::Sample s;
      s.pose.position = m.rx;
      s.target = kind == train::Observation::kSpectrum
                     ? ad::Tensor(360, 90, std::vector<double>(m.spectrum.values().begin(), m.spectrum.values().end()))
                     : ad::Tensor::scalar(m.rssi_db);
      samples.push_back(s);
    }
  }
};

void BM_PredictSpectrum(benchmark::State& state) {
  DemoScene d(train::Observation::kSpectrum);
  const render::ReceiverPose pose = d.samples[0].pose;
  for (auto _ : state) benchmark::DoNotOptimize(train::predict(d.model, d.target, std::span(&pose, 1)));
}
BENCHMARK(BM_PredictSpectrum)->Unit(benchmark::kMillisecond);

void BM_TrainStep(benchmark::State& state) {
  const auto kind = state.range(0) == 0 ? train::Observation::kSpectrum : train::Observation::kRssi;
  DemoScene d(kind);
  train::TrainConfig cfg;
  cfg.batch = 4;
  cfg.epochs = 1;
  for (auto _ : state) train::train(d.model, d.target, d.samples, cfg);
  state.SetLabel(kind == train::Observation::kSpectrum ? "spectrum batch 4" : "rssi batch 4");
}
BENCHMARK(BM_TrainStep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
