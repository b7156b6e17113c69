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


#include "rfsplat/io/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rfsplat::io {

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of an empty set");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

RssiReport rssi_metrics(std::span<const double> pred_db, std::span<const double> gt_db) {
  if (pred_db.empty() || pred_db.size() != gt_db.size()) {
    throw std::invalid_argument("rssi metrics need equally many predictions and ground truths");
  }
  RssiReport r;
  for (std::size_t i = 0; i < pred_db.size(); ++i) r.errors_db.push_back(std::abs(pred_db[i] - gt_db[i]));
  r.median_mae_db = median(r.errors_db);
  r.mean_mae_db = std::accumulate(r.errors_db.begin(), r.errors_db.end(), 0.0) / static_cast<double>(r.errors_db.size());
  return r;
}

Cdf empirical_cdf(std::vector<double> samples) {
  Cdf c;
  std::sort(samples.begin(), samples.end());
  c.values = std::move(samples);
  const double n = static_cast<double>(c.values.size());
  for (std::size_t i = 0; i < c.values.size(); ++i) c.quantiles.push_back(static_cast<double>(i + 1) / n);
  return c;
}

SpectrumReport spectrum_metrics(std::span<const ad::Tensor> pred, std::span<const ad::Tensor> gt,
                                const train::SsimConfig& cfg) {
  if (pred.empty() || pred.size() != gt.size()) {
    throw std::invalid_argument("spectrum metrics need equally many predictions and ground truths");
  }
  SpectrumReport r;
  std::vector<double> mae;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (!pred[i].same_shape(gt[i])) throw std::invalid_argument("prediction and ground truth shapes differ");
    const auto [lo, hi] = std::minmax_element(gt[i].data.begin(), gt[i].data.end());
    const double range = *hi > *lo ? *hi - *lo : 1.0;
    r.ssim.push_back(train::ssim(pred[i].data, gt[i].data, gt[i].rows, gt[i].cols, range, cfg));
    double m = 0.0;
    for (std::size_t k = 0; k < gt[i].data.size(); ++k) m += std::abs(pred[i].data[k] - gt[i].data[k]);
    mae.push_back(m / static_cast<double>(gt[i].data.size()));
  }
  r.mean_ssim = std::accumulate(r.ssim.begin(), r.ssim.end(), 0.0) / static_cast<double>(r.ssim.size());
  r.median_mae = median(mae);
  r.cdf = empirical_cdf(r.ssim);
  return r;
}

}  // namespace rfsplat::io
