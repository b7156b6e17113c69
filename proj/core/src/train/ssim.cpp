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

#include "rfsplat/train/ssim.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

namespace rfsplat::train {
namespace {

std::vector<double> taps(const SsimConfig& cfg) {
  const int half = cfg.window / 2;
  std::vector<double> g(static_cast<std::size_t>(cfg.window));
  for (int k = -half; k <= half; ++k) {
    g[static_cast<std::size_t>(k + half)] = std::exp(-0.5 * k * k / (cfg.sigma * cfg.sigma));
  }
  return g;
}

// One axis of the clipped, renormalized Gaussian blur.
struct Blur1d {
  int n = 0;
  int half = 0;
  std::vector<double> g;
  std::vector<double> inv_norm;

  Blur1d(int size, const std::vector<double>& kernel) : n(size), half(static_cast<int>(kernel.size()) / 2), g(kernel) {
    inv_norm.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      double z = 0.0;
      for (int k = -half; k <= half; ++k) {
        if (i + k >= 0 && i + k < n) z += g[static_cast<std::size_t>(k + half)];
      }
      inv_norm[static_cast<std::size_t>(i)] = 1.0 / z;
    }
  }

  // out[i] = sum_k g[k] in[i + k] / Z_i over the strided line.
  void forward(const double* in, double* out, int stride) const {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      const int lo = std::max(-half, -i), hi = std::min(half, n - 1 - i);
      for (int k = lo; k <= hi; ++k) s += g[static_cast<std::size_t>(k + half)] * in[(i + k) * stride];
      out[i * stride] = s * inv_norm[static_cast<std::size_t>(i)];
    }
  }

  // Transpose of forward.
  void adjoint(const double* in, double* out, int stride) const {
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      const int lo = std::max(-half, j - (n - 1)), hi = std::min(half, j);
      for (int k = lo; k <= hi; ++k) {
        const int i = j - k;
        s += g[static_cast<std::size_t>(k + half)] * in[i * stride] * inv_norm[static_cast<std::size_t>(i)];
      }
      out[j * stride] = s;
    }
  }
};

struct Blur2d {
  int rows, cols;
  Blur1d along_rows, along_cols;

  Blur2d(int r, int c, const SsimConfig& cfg)
      : rows(r), cols(c), along_rows(c, taps(cfg)), along_cols(r, taps(cfg)) {}

  std::vector<double> apply(std::span<const double> x, bool transpose) const {
    std::vector<double> tmp(x.size()), out(x.size());
    for (int r = 0; r < rows; ++r) {
      const double* in = x.data() + static_cast<std::ptrdiff_t>(r) * cols;
      double* o = tmp.data() + static_cast<std::ptrdiff_t>(r) * cols;
      transpose ? along_rows.adjoint(in, o, 1) : along_rows.forward(in, o, 1);
    }
    for (int c = 0; c < cols; ++c) {
      transpose ? along_cols.adjoint(tmp.data() + c, out.data() + c, cols)
                : along_cols.forward(tmp.data() + c, out.data() + c, cols);
    }
    return out;
  }
};

struct SsimState {
  double value = 0.0;
  std::vector<double> d_a, d_b;
};

SsimState evaluate(std::span<const double> a, std::span<const double> b, int rows, int cols,
                   double dynamic_range, const SsimConfig& cfg, bool with_grad) {
  cfg.validate();
  const std::size_t n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  if (rows <= 0 || cols <= 0 || a.size() != n || b.size() != n) {
    throw std::invalid_argument("ssim needs two non-empty grids of the same size");
  }
  if (!(dynamic_range > 0.0)) throw std::invalid_argument("ssim dynamic range must be positive");
  const double c1 = std::pow(cfg.k1 * dynamic_range, 2), c2 = std::pow(cfg.k2 * dynamic_range, 2);
  const Blur2d blur(rows, cols, cfg);
  std::vector<double> aa(n), bb(n), ab(n);
  for (std::size_t i = 0; i < n; ++i) {
    aa[i] = a[i] * a[i];
    bb[i] = b[i] * b[i];
    ab[i] = a[i] * b[i];
  }
  const auto ma = blur.apply(a, false), mb = blur.apply(b, false);
  const auto eaa = blur.apply(aa, false), ebb = blur.apply(bb, false), eab = blur.apply(ab, false);
  SsimState st;
  std::vector<double> g_ma, g_mb, g_eaa, g_ebb, g_eab;
  if (with_grad) {
    g_ma.resize(n), g_mb.resize(n), g_eaa.resize(n), g_ebb.resize(n), g_eab.resize(n);
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double vaa = eaa[i] - ma[i] * ma[i], vbb = ebb[i] - mb[i] * mb[i];
    const double vab = eab[i] - ma[i] * mb[i];
    const double p = 2.0 * ma[i] * mb[i] + c1, q = 2.0 * vab + c2;
    const double r = ma[i] * ma[i] + mb[i] * mb[i] + c1, s = vaa + vbb + c2;
    const double v = (p * q) / (r * s);
    total += v;
    if (!with_grad) continue;
    // Partials of v in terms of (mu_a, mu_b, var_a, var_b, cov).
    const double dv_dmu_a = (2.0 * mb[i] * q) / (r * s) - v * 2.0 * ma[i] / r;
    const double dv_dmu_b = (2.0 * ma[i] * q) / (r * s) - v * 2.0 * mb[i] / r;
    const double dv_dvar = -v / s;
    const double dv_dcov = 2.0 * p / (r * s);
    // Chain into the blurred moments: var_a = E[aa] - mu_a^2, cov = E[ab] - mu_a mu_b.
    g_eaa[i] = inv_n * dv_dvar;
    g_ebb[i] = inv_n * dv_dvar;
    g_eab[i] = inv_n * dv_dcov;
    g_ma[i] = inv_n * (dv_dmu_a - 2.0 * ma[i] * dv_dvar - mb[i] * dv_dcov);
    g_mb[i] = inv_n * (dv_dmu_b - 2.0 * mb[i] * dv_dvar - ma[i] * dv_dcov);
  }
  st.value = total * inv_n;
  if (with_grad) {
    const auto t_ma = blur.apply(g_ma, true), t_mb = blur.apply(g_mb, true);
    const auto t_eaa = blur.apply(g_eaa, true), t_ebb = blur.apply(g_ebb, true);
    const auto t_eab = blur.apply(g_eab, true);
    st.d_a.resize(n);
    st.d_b.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      st.d_a[i] = t_ma[i] + 2.0 * a[i] * t_eaa[i] + b[i] * t_eab[i];
      st.d_b[i] = t_mb[i] + 2.0 * b[i] * t_ebb[i] + a[i] * t_eab[i];
    }
  }
  return st;
}

}  // namespace

void SsimConfig::validate() const {
  if (window <= 0 || window % 2 == 0) throw std::invalid_argument("ssim window must be odd and positive");
  if (!(sigma > 0.0)) throw std::invalid_argument("ssim sigma must be positive");
}

double ssim(std::span<const double> a, std::span<const double> b, int rows, int cols,
            double dynamic_range, const SsimConfig& cfg) {
  return evaluate(a, b, rows, cols, dynamic_range, cfg, false).value;
}

ad::Var ssim(ad::Tape& t, ad::Var a, ad::Var b, double dynamic_range, const SsimConfig& cfg) {
  const ad::Tensor& av = t.value(a);
  const ad::Tensor& bv = t.value(b);
  if (!av.same_shape(bv)) throw std::invalid_argument("ssim needs two grids of the same size");
  auto st = std::make_shared<SsimState>(evaluate(av.data, bv.data, av.rows, av.cols, dynamic_range, cfg,
                                                 t.requires_grad(a) || t.requires_grad(b)));
  const ad::Var inputs[] = {a, b};
  return t.record(ad::Tensor::scalar(st->value), inputs,
                  [a, b, st](ad::Tape& tape, const ad::Tensor& up) {
                    const double g = up.item();
                    if (tape.requires_grad(a)) {
                      auto& ga = tape.grad_buffer(a);
                      for (std::size_t i = 0; i < st->d_a.size(); ++i) ga.data[i] += g * st->d_a[i];
                    }
                    if (tape.requires_grad(b)) {
                      auto& gb = tape.grad_buffer(b);
                      for (std::size_t i = 0; i < st->d_b.size(); ++i) gb.data[i] += g * st->d_b[i];
                    }
                  });
}

}  // namespace rfsplat::train
