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

#include "rfsplat/render/rssi_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "rfsplat/signal/signal.hpp"

namespace rfsplat::render {

void RssiMapConfig::validate() const {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  if (!(uniform_blend >= 0.0 && uniform_blend <= 1.0)) {
    throw std::invalid_argument("uniform blend must lie in [0, 1]");
  }
  if (!(reference_power > 0.0)) throw std::invalid_argument("reference power must be positive");
}

std::vector<double> rssi_map_weights(std::span<const double> map, const RssiMapConfig& cfg) {
  cfg.validate();
  if (map.empty()) throw std::invalid_argument("empty map");
  const double k = static_cast<double>(map.size());
  double mean = 0.0;
  for (double r : map) mean += r;
  mean /= k;
  std::vector<double> w(map.size());
  double zmax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < map.size(); ++i) {
    w[i] = (map[i] - mean) / cfg.temperature;
    zmax = std::max(zmax, w[i]);
  }
  double total = 0.0;
  for (double& z : w) {
    z = std::exp(z - zmax);
    total += z;
  }
  for (double& z : w) z = (1.0 - cfg.uniform_blend) * z / total + cfg.uniform_blend / k;
  return w;
}

double rssi_map_power(std::span<const double> map, const RssiMapConfig& cfg) {
  const auto w = rssi_map_weights(map, cfg);
  double p = 0.0;
  for (std::size_t i = 0; i < map.size(); ++i) p += w[i] * map[i];
  return p;
}

double rssi_from_map(std::span<const double> map, const RssiMapConfig& cfg) {
  const double p = rssi_map_power(map, cfg);
  if (!(p > 0.0)) return signal::kSilentRssi;
  return signal::rssi_from_power(p, cfg.reference_power);
}

double rssi_from_map(const PerceptionPlane& plane, const RssiMapConfig& cfg) {
  return rssi_from_map(std::span<const double>(plane.values), cfg);
}

ad::Var rssi_from_map(ad::Tape& tape, ad::Var map, const RssiMapConfig& cfg) {
  const ad::Tensor& values = tape.value(map);
  const std::span<const double> r(values.data);
  // Pure softmax weights (blend 0) are needed by the backward pass.
  RssiMapConfig plain = cfg;
  plain.uniform_blend = 0.0;
  auto sm = rssi_map_weights(r, plain);
  const double k = static_cast<double>(r.size());
  double p = 0.0;
  double sm_mean = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    p += ((1.0 - cfg.uniform_blend) * sm[i] + cfg.uniform_blend / k) * r[i];
    sm_mean += sm[i] * r[i];
  }
  const double db = p > 0.0 ? signal::rssi_from_power(p, cfg.reference_power)
                            : signal::kSilentRssi;
  const ad::Var inputs[] = {map};
  return tape.record(
      ad::Tensor::scalar(db), inputs,
      [map, sm = std::move(sm), p, sm_mean, k, cfg](ad::Tape& t, const ad::Tensor& g) {
        if (!(p > 0.0)) return;
        const ad::Tensor& rv = t.value(map);
        const double scale = 10.0 / (p * std::numbers::ln10) * g.item();
        const double keep = 1.0 - cfg.uniform_blend;
        ad::Tensor& out = t.grad_buffer(map);
        for (std::size_t j = 0; j < sm.size(); ++j) {
          const double w = keep * sm[j] + cfg.uniform_blend / k;
          const double h = sm[j] * (rv.data[j] - sm_mean);
          out.data[j] += scale * (w + keep * h / cfg.temperature);
        }
      });
}

}  // namespace rfsplat::render
