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

#include "rfsplat/tokenizer/embedding.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rfsplat::tokenizer {
namespace {

void check(int frequencies, double scale) {
  if (frequencies < 1) throw std::invalid_argument("embedding needs at least one frequency");
  if (!(scale > 0.0)) throw std::invalid_argument("embedding scale must be positive");
}

double omega(int f, double scale) { return std::ldexp(std::numbers::pi, f) / scale; }

}  // namespace

std::vector<double> embed_euclidean(const Eigen::Vector3d& p, int frequencies, double scale) {
  check(frequencies, scale);
  std::vector<double> out(static_cast<std::size_t>(6 * frequencies));
  for (int f = 0; f < frequencies; ++f) {
    for (int i = 0; i < 3; ++i) {
      const double a = omega(f, scale) * p[i];
      out[static_cast<std::size_t>((f * 3 + i) * 2)] = std::sin(a);
      out[static_cast<std::size_t>((f * 3 + i) * 2 + 1)] = std::cos(a);
    }
  }
  return out;
}

ad::Var embed_euclidean(ad::Tape& tape, ad::Var positions, int frequencies, double scale) {
  check(frequencies, scale);
  const ad::Tensor& p = tape.value(positions);
  if (p.cols != 3) throw std::invalid_argument("positions must be n x 3");
  ad::Tensor y(p.rows, 6 * frequencies);
  for (int r = 0; r < p.rows; ++r) {
    const auto e = embed_euclidean(Eigen::Vector3d(p(r, 0), p(r, 1), p(r, 2)), frequencies, scale);
    std::copy(e.begin(), e.end(), y.data.begin() + static_cast<std::ptrdiff_t>(r) * y.cols);
  }
  const ad::Var in[] = {positions};
  return tape.record(std::move(y), in,
                     [positions, frequencies, scale](ad::Tape& t, const ad::Tensor& g) {
                       const ad::Tensor& p = t.value(positions);
                       ad::Tensor& gp = t.grad_buffer(positions);
                       for (int r = 0; r < p.rows; ++r) {
                         for (int f = 0; f < frequencies; ++f) {
                           const double w = omega(f, scale);
                           for (int i = 0; i < 3; ++i) {
                             const double a = w * p(r, i);
                             const int k = (f * 3 + i) * 2;
                             gp(r, i) += w * (g(r, k) * std::cos(a) - g(r, k + 1) * std::sin(a));
                           }
                         }
                       }
                     });
}

}  // namespace rfsplat::tokenizer
