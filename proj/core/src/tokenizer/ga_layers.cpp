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

#include "rfsplat/tokenizer/ga_layers.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace rfsplat::tokenizer {
namespace {

constexpr int kB = ga::kBladeCount;

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

double sigm(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

const std::array<std::vector<BladeTerm>, kBasisMaps>& equivariant_basis(const ga::Signature& sig) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::array<std::vector<BladeTerm>, kBasisMaps>> cache;
  const std::lock_guard lock(mu);
  auto [it, fresh] = cache.try_emplace({sig.p, sig.q});
  if (!fresh) return it->second;
  const auto& table = ga::cayley_table(sig);
  for (int b = 0; b < kB; ++b) it->second[static_cast<std::size_t>(ga::blade_grade(b))].push_back({b, b, 1.0});
  for (int k = 0; k < 4; ++k) {
    for (int b = 0; b < kB; ++b) {
      if (ga::blade_grade(b) != k) continue;
      const int s = table.sign[ga::kE4][b];
      if (s != 0) it->second[static_cast<std::size_t>(5 + k)].push_back({b, table.index[ga::kE4][b], double(s)});
    }
  }
  return it->second;
}

ad::Var mv_linear(ad::Tape& t, ad::Var x, ad::Var weight, int in_channels, int out_channels,
                  const ga::Signature& sig) {
  const ad::Tensor& X = t.value(x);
  const ad::Tensor& W = t.value(weight);
  require(X.cols == in_channels * kB, "mv_linear: input width does not match channels");
  require(W.rows == kBasisMaps && W.cols == out_channels * in_channels,
          "mv_linear: weight must be 9 x (out * in)");
  const auto& basis = equivariant_basis(sig);
  ad::Tensor y(X.rows, out_channels * kB);
  for (int r = 0; r < X.rows; ++r) {
    for (int b = 0; b < kBasisMaps; ++b) {
      for (const auto& term : basis[static_cast<std::size_t>(b)]) {
        for (int o = 0; o < out_channels; ++o) {
          double acc = 0.0;
          for (int c = 0; c < in_channels; ++c) {
            acc += W(b, o * in_channels + c) * X(r, c * kB + term.src);
          }
          y(r, o * kB + term.dst) += term.sign * acc;
        }
      }
    }
  }
  const ad::Var in[] = {x, weight};
  return t.record(std::move(y), in,
                  [x, weight, in_channels, out_channels, &basis](ad::Tape& t, const ad::Tensor& g) {
                    const ad::Tensor& X = t.value(x);
                    const ad::Tensor& W = t.value(weight);
                    const bool gx = t.requires_grad(x);
                    const bool gw = t.requires_grad(weight);
                    ad::Tensor* GX = gx ? &t.grad_buffer(x) : nullptr;
                    ad::Tensor* GW = gw ? &t.grad_buffer(weight) : nullptr;
                    for (int r = 0; r < X.rows; ++r) {
                      for (int b = 0; b < kBasisMaps; ++b) {
                        for (const auto& term : basis[static_cast<std::size_t>(b)]) {
                          for (int o = 0; o < out_channels; ++o) {
                            const double go = term.sign * g(r, o * kB + term.dst);
                            if (go == 0.0) continue;
                            for (int c = 0; c < in_channels; ++c) {
                              if (gx) (*GX)(r, c * kB + term.src) += go * W(b, o * in_channels + c);
                              if (gw) (*GW)(b, o * in_channels + c) += go * X(r, c * kB + term.src);
                            }
                          }
                        }
                      }
                    }
                  });
}

ad::Var mv_gate(ad::Tape& t, ad::Var x, int channels) {
  const ad::Tensor& X = t.value(x);
  require(X.cols == channels * kB, "mv_gate: width does not match channels");
  ad::Tensor y(X.rows, X.cols);
  for (int r = 0; r < X.rows; ++r) {
    for (int c = 0; c < channels; ++c) {
      const double s = sigm(X(r, c * kB));
      for (int j = 0; j < kB; ++j) y(r, c * kB + j) = s * X(r, c * kB + j);
    }
  }
  const ad::Var in[] = {x};
  return t.record(std::move(y), in, [x, channels](ad::Tape& t, const ad::Tensor& g) {
    const ad::Tensor& X = t.value(x);
    ad::Tensor& G = t.grad_buffer(x);
    for (int r = 0; r < X.rows; ++r) {
      for (int c = 0; c < channels; ++c) {
        const double s = sigm(X(r, c * kB));
        double dot = 0.0;
        for (int j = 0; j < kB; ++j) {
          G(r, c * kB + j) += s * g(r, c * kB + j);
          dot += g(r, c * kB + j) * X(r, c * kB + j);
        }
        G(r, c * kB) += dot * s * (1.0 - s);
      }
    }
  });
}

ad::Var mv_invariants(ad::Tape& t, ad::Var x, int channels) {
  const ad::Tensor& X = t.value(x);
  require(X.cols == channels * kB, "mv_invariants: width does not match channels");
  ad::Tensor y(X.rows, 2 * channels);
  for (int r = 0; r < X.rows; ++r) {
    for (int c = 0; c < channels; ++c) {
      y(r, 2 * c) = X(r, c * kB);
      double n2 = 0.0;
      for (int j = ga::kE1; j <= ga::kE3; ++j) n2 += X(r, c * kB + j) * X(r, c * kB + j);
      y(r, 2 * c + 1) = n2;
    }
  }
  const ad::Var in[] = {x};
  return t.record(std::move(y), in, [x, channels](ad::Tape& t, const ad::Tensor& g) {
    const ad::Tensor& X = t.value(x);
    ad::Tensor& G = t.grad_buffer(x);
    for (int r = 0; r < X.rows; ++r) {
      for (int c = 0; c < channels; ++c) {
        G(r, c * kB) += g(r, 2 * c);
        for (int j = ga::kE1; j <= ga::kE3; ++j) {
          G(r, c * kB + j) += 2.0 * X(r, c * kB + j) * g(r, 2 * c + 1);
        }
      }
    }
  });
}

ad::Var add_to_scalar_parts(ad::Tape& t, ad::Var x, ad::Var s, int channels) {
  const ad::Tensor& X = t.value(x);
  const ad::Tensor& S = t.value(s);
  require(X.cols == channels * kB, "add_to_scalar_parts: width does not match channels");
  require(S.rows == X.rows && S.cols == channels, "add_to_scalar_parts: scalar shape mismatch");
  ad::Tensor y = X;
  for (int r = 0; r < X.rows; ++r) {
    for (int c = 0; c < channels; ++c) y(r, c * kB) += S(r, c);
  }
  const ad::Var in[] = {x, s};
  return t.record(std::move(y), in, [x, s, channels](ad::Tape& t, const ad::Tensor& g) {
    if (t.requires_grad(x)) t.grad_buffer(x).map() += g.map();
    if (t.requires_grad(s)) {
      ad::Tensor& G = t.grad_buffer(s);
      for (int r = 0; r < G.rows; ++r) {
        for (int c = 0; c < channels; ++c) G(r, c) += g(r, c * kB);
      }
    }
  });
}

ad::Var points_to_mv(ad::Tape& t, ad::Var points, int channels) {
  const ad::Tensor& P = t.value(points);
  require(P.cols == 3, "points_to_mv: points must be n x 3");
  require(channels >= 1, "points_to_mv: need at least one channel");
  ad::Tensor y(P.rows, channels * kB);
  for (int r = 0; r < P.rows; ++r) {
    y(r, ga::kScalar) = 1.0;
    for (int i = 0; i < 3; ++i) y(r, ga::kE1 + i) = P(r, i);
  }
  const ad::Var in[] = {points};
  return t.record(std::move(y), in, [points](ad::Tape& t, const ad::Tensor& g) {
    ad::Tensor& G = t.grad_buffer(points);
    for (int r = 0; r < G.rows; ++r) {
      for (int i = 0; i < 3; ++i) G(r, i) += g(r, ga::kE1 + i);
    }
  });
}

ad::Tensor invariant_mask(int rows, int channels) {
  ad::Tensor m(rows, channels * kB);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < channels; ++c) {
      for (int j = 0; j < kB; ++j) m(r, c * kB + j) = ga::blade_has_e4(j) ? 0.0 : 1.0;
    }
  }
  return m;
}

}  // namespace rfsplat::tokenizer
