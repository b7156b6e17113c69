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

// Direct windowed SSIM: every pixel gathers its clipped Gaussian window and
// computes mean, variance and covariance from the weighted samples.
#pragma once

#include <algorithm>
#include <cmath>
#include <span>

namespace rfsplat::oracle {

inline double naive_ssim(std::span<const double> a, std::span<const double> b, int rows, int cols,
                         double range, int window = 11, double sigma = 1.5) {
  const double c1 = (0.01 * range) * (0.01 * range), c2 = (0.03 * range) * (0.03 * range);
  const int h = window / 2;
  double total = 0.0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double wsum = 0.0, ma = 0.0, mb = 0.0;
      for (int dr = -h; dr <= h; ++dr) {
        for (int dc = -h; dc <= h; ++dc) {
          const int rr = r + dr, cc = c + dc;
          if (rr < 0 || rr >= rows || cc < 0 || cc >= cols) continue;
          const double w = std::exp(-(dr * dr + dc * dc) / (2.0 * sigma * sigma));
          wsum += w;
          ma += w * a[static_cast<std::size_t>(rr * cols + cc)];
          mb += w * b[static_cast<std::size_t>(rr * cols + cc)];
        }
      }
      ma /= wsum;
      mb /= wsum;
      double va = 0.0, vb = 0.0, cov = 0.0;
      for (int dr = -h; dr <= h; ++dr) {
        for (int dc = -h; dc <= h; ++dc) {
          const int rr = r + dr, cc = c + dc;
          if (rr < 0 || rr >= rows || cc < 0 || cc >= cols) continue;
          const double w = std::exp(-(dr * dr + dc * dc) / (2.0 * sigma * sigma)) / wsum;
          const double x = a[static_cast<std::size_t>(rr * cols + cc)] - ma;
          const double y = b[static_cast<std::size_t>(rr * cols + cc)] - mb;
          va += w * x * x;
          vb += w * y * y;
          cov += w * x * y;
        }
      }
      total += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
    }
  }
  return total / (rows * cols);
}

}  // namespace rfsplat::oracle
