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

#include <span>
#include <vector>

#include "rfsplat/autodiff/tape.hpp"
#include "rfsplat/train/ssim.hpp"

namespace rfsplat::io {

struct RssiReport {
  double median_mae_db = 0.0;
  double mean_mae_db = 0.0;
  std::vector<double> errors_db;  // |pred - gt| per receiver, input order
};

// Throws std::invalid_argument for empty or mismatched inputs.
RssiReport rssi_metrics(std::span<const double> pred_db, std::span<const double> gt_db);

struct Cdf {
  std::vector<double> values;     // ascending
  std::vector<double> quantiles;  // (i + 1) / n
};

Cdf empirical_cdf(std::vector<double> samples);

struct SpectrumReport {
  double mean_ssim = 0.0;
  double median_mae = 0.0;
  std::vector<double> ssim;  // per sample, input order
  Cdf cdf;
};

// SSIM of each prediction against its ground truth, with the ground truth's
// own max - min as dynamic range (1 for a flat grid). Throws
// std::invalid_argument for empty or mismatched inputs.
SpectrumReport spectrum_metrics(std::span<const ad::Tensor> pred, std::span<const ad::Tensor> gt,
                                const train::SsimConfig& cfg = {});

double median(std::vector<double> v);

}  // namespace rfsplat::io
