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

#include "rfsplat/train/trainer.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rfsplat/errors.hpp"

namespace rfsplat::train {
namespace {

bool finite(const ad::Tensor& t) {
  for (double v : t.data) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double max_abs(const ad::Tensor& t) {
  double m = 0.0;
  for (double v : t.data) m = std::max(m, std::abs(v));
  return m;
}

[[noreturn]] void diverge(const Model& model, const TrainConfig& cfg, const StepRecord& rec,
                          std::span<const ad::Tensor> grads) {
  if (!cfg.dump_path.empty()) {
    nlohmann::json j;
    j["step"] = rec.step;
    j["epoch"] = rec.epoch;
    j["loss"] = std::isfinite(rec.loss) ? nlohmann::json(rec.loss) : nlohmann::json(std::to_string(rec.loss));
    j["seed"] = cfg.seed;
    for (int s = 0; s < model.params.size(); ++s) {
      nlohmann::json e;
      e["name"] = model.params.name(s);
      e["finite"] = finite(model.params[s]);
      e["max_abs"] = max_abs(model.params[s]);
      if (static_cast<std::size_t>(s) < grads.size()) {
        e["grad_finite"] = finite(grads[static_cast<std::size_t>(s)]);
        e["grad_max_abs"] = max_abs(grads[static_cast<std::size_t>(s)]);
      }
      j["parameters"].push_back(e);
    }
    std::ofstream(cfg.dump_path) << j.dump(2) << '\n';
  }
  throw DivergenceError("training diverged at step " + std::to_string(rec.step) + " (loss " +
                        std::to_string(rec.loss) + ")");
}

}  // namespace

void TrainConfig::validate() const {
  if (epochs < 0) throw std::invalid_argument("epochs must be non-negative");
  if (batch < 1) throw std::invalid_argument("batch size must be positive");
  if (max_steps < 0) throw std::invalid_argument("max_steps must be non-negative");
  adam.validate();
  loss.validate();
}

std::vector<int> shuffled_indices(int n, std::uint64_t seed) {
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  std::mt19937_64 rng(seed);
  for (int i = n - 1; i > 0; --i) {
    // Rejection keeps the draw unbiased.
    const std::uint64_t range = static_cast<std::uint64_t>(i) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t r;
    do {
      r = rng();
    } while (r >= limit);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(r % range)]);
  }
  return idx;
}

TrainResult train(Model& model, const RenderTarget& target, std::span<const Sample> samples,
                  const TrainConfig& cfg, const StepCallback& on_step) {
  cfg.validate();
  TrainResult result;
  if (cfg.epochs == 0) return result;
  if (samples.empty()) throw std::invalid_argument("training needs at least one sample");
  for (const auto& s : samples) {
    if (s.target.rows != target.rows() || s.target.cols != target.cols()) {
      throw std::invalid_argument("sample target does not match the render target shape");
    }
  }
  Adam adam(cfg.adam);
  const int n = static_cast<int>(samples.size());
  std::int64_t step = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto order = shuffled_indices(n, cfg.seed + static_cast<std::uint64_t>(epoch));
    double epoch_total = 0.0;
    int epoch_steps = 0;
    for (int start = 0; start < n; start += cfg.batch) {
      if (cfg.max_steps > 0 && step >= cfg.max_steps) break;
      const int end = std::min(n, start + cfg.batch);
      ad::Tape t;
      const ForwardPass fwd = forward(t, model, true);
      std::vector<ad::Var> preds;
      std::vector<ad::Tensor> gts;
      for (int k = start; k < end; ++k) {
        const Sample& s = samples[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
        preds.push_back(observe(t, fwd, model, target, s.pose));
        gts.push_back(s.target);
      }
      const ad::Var l = loss(t, preds, gts, fwd.d_attn, cfg.loss);
      StepRecord rec{step, epoch, t.value(l).item(), dynamic_range(gts)};
      if (!std::isfinite(rec.loss)) diverge(model, cfg, rec, {});
      const auto grads = ad::gradients(t, l, fwd.bound);
      for (const auto& g : grads) {
        if (!finite(g)) diverge(model, cfg, rec, grads);
      }
      adam.step(model.params, grads);
      model.project_constraints();
      ++step;
      epoch_total += rec.loss;
      ++epoch_steps;
      result.steps.push_back(rec);
      if (on_step) on_step(rec);
    }
    if (epoch_steps == 0) break;
    result.epoch_loss.push_back(epoch_total / epoch_steps);
  }
  return result;
}

double evaluate_loss(const Model& model, const RenderTarget& target, std::span<const Sample> samples,
                     const LossConfig& cfg) {
  ad::Tape t;
  const ForwardPass f = forward(t, model, false);
  std::vector<ad::Tensor> preds, gts;
  for (const auto& s : samples) {
    preds.push_back(t.value(observe(t, f, model, target, s.pose)));
    gts.push_back(s.target);
  }
  return loss(preds, gts, t.value(f.d_attn).data, cfg);
}

}  // namespace rfsplat::train
