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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rfsplat/train/adam.hpp"
#include "rfsplat/train/loss.hpp"
#include "rfsplat/train/model.hpp"

namespace rfsplat::train {

// One supervised measurement: receiver pose and the observation rendered at
// it (rows x cols of the render target).
struct Sample {
  render::ReceiverPose pose;
  ad::Tensor target;
};

struct TrainConfig {
  int epochs = 1;
  int batch = 8;               // measurements sharing one network pass
  std::int64_t max_steps = 0;  // 0 = no limit
  AdamConfig adam;
  LossConfig loss;
  std::uint64_t seed = 42;
  std::string dump_path;       // where a diverging run writes its state, if set

  void validate() const;
};

struct StepRecord {
  std::int64_t step = 0;
  int epoch = 0;
  double loss = 0.0;
  double dynamic_range = 0.0;
};

struct TrainResult {
  std::vector<double> epoch_loss;  // mean step loss per completed epoch
  std::vector<StepRecord> steps;
};

using StepCallback = std::function<void(const StepRecord&)>;

// Deterministic permutation of 0..n-1 driven only by the raw generator
// output, so it does not depend on the standard library's distributions.
std::vector<int> shuffled_indices(int n, std::uint64_t seed);

// Mini-batch Adam over the samples. Each step runs encoder and mapping net
// once, renders every pose of the batch, averages the loss and updates all
// parameters. A non-finite loss or gradient throws DivergenceError after
// writing a JSON state dump to cfg.dump_path (when set).
TrainResult train(Model& model, const RenderTarget& target, std::span<const Sample> samples,
                  const TrainConfig& cfg, const StepCallback& on_step = {});

// Loss of the current model over a sample list, without gradients.
double evaluate_loss(const Model& model, const RenderTarget& target, std::span<const Sample> samples,
                     const LossConfig& cfg);

}  // namespace rfsplat::train
