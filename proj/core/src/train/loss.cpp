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

#include "rfsplat/train/loss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rfsplat/autodiff/ops.hpp"

namespace rfsplat::train {

void LossConfig::validate() const {
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("loss beta must lie in [0, 1]");
  if (!(alpha_reg >= 0.0)) throw std::invalid_argument("loss alpha_reg must be non-negative");
  ssim.validate();
}

double dynamic_range(std::span<const ad::Tensor> gt) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& g : gt) {
    for (double v : g.data) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return hi > lo ? hi - lo : 1.0;
}

double loss(std::span<const ad::Tensor> pred, std::span<const ad::Tensor> gt,
            std::span<const double> d_attn, const LossConfig& cfg) {
  cfg.validate();
  if (pred.empty() || pred.size() != gt.size()) {
    throw std::invalid_argument("loss needs equal, non-empty prediction and target lists");
  }
  const double range = dynamic_range(gt);
  double total = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (!pred[i].same_shape(gt[i]) || pred[i].size() == 0) {
      throw std::invalid_argument("prediction and target grids differ in shape");
    }
    double mae = 0.0;
    for (std::size_t k = 0; k < pred[i].data.size(); ++k) mae += std::abs(gt[i].data[k] - pred[i].data[k]);
    mae /= static_cast<double>(pred[i].data.size());
    double term = cfg.beta * mae;
    if (cfg.beta < 1.0) {
      term += (1.0 - cfg.beta) * (1.0 - ssim(gt[i].data, pred[i].data, gt[i].rows, gt[i].cols, range, cfg.ssim));
    }
    total += term;
  }
  double reg = 0.0;
  for (double d : d_attn) reg += d * d;
  return total / static_cast<double>(pred.size()) + cfg.alpha_reg * reg;
}

ad::Var loss(ad::Tape& t, std::span<const ad::Var> pred, std::span<const ad::Tensor> gt,
             ad::Var d_attn, const LossConfig& cfg) {
  cfg.validate();
  if (pred.empty() || pred.size() != gt.size()) {
    throw std::invalid_argument("loss needs equal, non-empty prediction and target lists");
  }
  const double range = dynamic_range(gt);
  ad::Var total;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (!t.value(pred[i]).same_shape(gt[i]) || gt[i].size() == 0) {
      throw std::invalid_argument("prediction and target grids differ in shape");
    }
    const ad::Var target = t.constant(gt[i]);
    ad::Var term = ad::scale(t, ad::mean_abs_diff(t, target, pred[i]), cfg.beta);
    if (cfg.beta < 1.0) {
      const ad::Var dissim = ad::add_scalar(t, ad::scale(t, ssim(t, target, pred[i], range, cfg.ssim), -1.0), 1.0);
      term = ad::add(t, term, ad::scale(t, dissim, 1.0 - cfg.beta));
    }
    total = total.valid() ? ad::add(t, total, term) : term;
  }
  total = ad::scale(t, total, 1.0 / static_cast<double>(pred.size()));
  return ad::add(t, total, ad::scale(t, ad::sum(t, ad::square(t, d_attn)), cfg.alpha_reg));
}

}  // namespace rfsplat::train
