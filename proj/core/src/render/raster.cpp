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

#include "rfsplat/render/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rfsplat/errors.hpp"

namespace rfsplat::render {
namespace {

const double kTail = std::exp(-4.5);

bool intervals_meet(double a0, double a1, double b0, double b1) { return a0 <= b1 && b0 <= a1; }

void check_order(const TileIndex& tiles, std::span<const ProjectedGaussian> projected) {
  for (const auto& list : tiles.lists) {
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (list[k] < 0 || static_cast<std::size_t>(list[k]) >= projected.size()) {
        throw ContractViolation("tile list references a missing primitive");
      }
      if (k == 0) continue;
      const auto& a = projected[static_cast<std::size_t>(list[k - 1])];
      const auto& b = projected[static_cast<std::size_t>(list[k])];
      if (b.depth < a.depth || (b.depth == a.depth && b.index <= a.index)) {
        throw ContractViolation("tile list is not sorted by depth");
      }
    }
  }
}

template <typename Fn>
void for_each_tile_sample(const TileIndex& tiles, const SampleGrid& grid, Fn&& fn) {
  for (int ty = 0; ty < tiles.tile_rows; ++ty) {
    for (int tx = 0; tx < tiles.tile_cols; ++tx) {
      const int t = ty * tiles.tile_cols + tx;
      const int r1 = std::min(grid.rows, (ty + 1) * tiles.tile_size);
      const int c1 = std::min(grid.cols, (tx + 1) * tiles.tile_size);
      for (int r = ty * tiles.tile_size; r < r1; ++r) {
        for (int c = tx * tiles.tile_size; c < c1; ++c) fn(t, r * grid.cols + c);
      }
    }
  }
}

struct Contribution {
  int slot;
  double m, g, a, e, prefix;
};

// Walks one sample's list front to back, stopping like the forward pass.
template <typename Fn>
double accumulate(const std::vector<int>& list, std::span<const ProjectedGaussian> projected,
                  const PlanePoint& p, const CompositeConfig& cfg, Fn&& on_contribution) {
  double transmittance = 1.0;
  double damping = 1.0;
  double value = 0.0;
  for (int slot : list) {
    if (transmittance < cfg.min_transmittance) break;
    const auto& g = projected[static_cast<std::size_t>(slot)];
    const double m = footprint_distance(g, p);
    const double f = footprint(m);
    if (f <= 0.0) continue;
    const double a = g.opacity * f;
    const double e = 1.0 - f * (1.0 - g.attenuation);
    const double prefix = transmittance * damping;
    value += g.signal * a * prefix;
    on_contribution(Contribution{slot, m, f, a, e, prefix});
    transmittance *= 1.0 - a;
    damping *= e;
  }
  return value;
}

}  // namespace

SampleGrid SampleGrid::plane(int width, int height, double v_max) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("plane dimensions must be positive");
  SampleGrid g;
  g.rows = height;
  g.cols = width;
  g.points.reserve(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (int r = 0; r < height; ++r) {
    const double v = v_max - (r + 0.5) * 2.0 * v_max / height;
    for (int c = 0; c < width; ++c) g.points.push_back({-180.0 + (c + 0.5) * 360.0 / width, v});
  }
  return g;
}

SampleGrid SampleGrid::spectrum(const Mercator& mercator) {
  SampleGrid g;
  g.rows = 360;
  g.cols = 90;
  g.points.reserve(360 * 90);
  for (int az = 0; az < 360; ++az) {
    for (int el = 0; el < 90; ++el) g.points.push_back({double(az), mercator.v_of_latitude(el)});
  }
  return g;
}

bool overlaps(const ProjectedGaussian& g, const TileBounds& b) {
  if (!intervals_meet(g.center.v - g.radius_v, g.center.v + g.radius_v, b.v_min, b.v_max)) {
    return false;
  }
  if (g.radius_u >= 180.0) return true;
  for (double shift : {-360.0, 0.0, 360.0}) {
    const double c = g.center.u + shift;
    if (intervals_meet(c - g.radius_u, c + g.radius_u, b.u_min, b.u_max)) return true;
  }
  return false;
}

TileIndex tile_and_sort(std::span<const ProjectedGaussian> projected, const SampleGrid& grid,
                        int tile_px) {
  if (tile_px <= 0) throw std::invalid_argument("tile size must be positive");
  TileIndex idx;
  idx.tile_size = tile_px;
  idx.tile_rows = (grid.rows + tile_px - 1) / tile_px;
  idx.tile_cols = (grid.cols + tile_px - 1) / tile_px;
  idx.lists.assign(static_cast<std::size_t>(idx.tile_count()), {});
  constexpr double kInf = std::numeric_limits<double>::infinity();
  idx.bounds.assign(static_cast<std::size_t>(idx.tile_count()), TileBounds{kInf, -kInf, kInf, -kInf});
  for_each_tile_sample(idx, grid, [&](int t, int k) {
    auto& b = idx.bounds[static_cast<std::size_t>(t)];
    const auto& p = grid.points[static_cast<std::size_t>(k)];
    b.u_min = std::min(b.u_min, p.u);
    b.u_max = std::max(b.u_max, p.u);
    b.v_min = std::min(b.v_min, p.v);
    b.v_max = std::max(b.v_max, p.v);
  });

  std::vector<int> order(projected.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& pa = projected[static_cast<std::size_t>(a)];
    const auto& pb = projected[static_cast<std::size_t>(b)];
    if (pa.depth != pb.depth) return pa.depth < pb.depth;
    return pa.index < pb.index;
  });
  for (int slot : order) {
    const auto& g = projected[static_cast<std::size_t>(slot)];
    for (int t = 0; t < idx.tile_count(); ++t) {
      if (overlaps(g, idx.bounds[static_cast<std::size_t>(t)])) {
        idx.lists[static_cast<std::size_t>(t)].push_back(slot);
      }
    }
  }
  return idx;
}

double footprint_distance(const ProjectedGaussian& g, const PlanePoint& p) {
  const double du = wrap_degrees(p.u - g.center.u);
  const double dv = p.v - g.center.v;
  return g.conic[0] * du * du + 2.0 * g.conic[1] * du * dv + g.conic[2] * dv * dv;
}

double footprint(double m) {
  if (!(m < 9.0)) return 0.0;
  return (std::exp(-0.5 * m) - kTail) / (1.0 - kTail);
}

double footprint_derivative(double m) {
  if (!(m < 9.0)) return 0.0;
  return -0.5 * std::exp(-0.5 * m) / (1.0 - kTail);
}

PerceptionPlane composite(const TileIndex& tiles, std::span<const ProjectedGaussian> projected,
                          const SampleGrid& grid, const CompositeConfig& cfg) {
  check_order(tiles, projected);
  PerceptionPlane out{grid.rows, grid.cols,
                      std::vector<double>(static_cast<std::size_t>(grid.size()), 0.0)};
  for_each_tile_sample(tiles, grid, [&](int t, int k) {
    out.values[static_cast<std::size_t>(k)] =
        accumulate(tiles.lists[static_cast<std::size_t>(t)], projected,
                   grid.points[static_cast<std::size_t>(k)], cfg, [](const Contribution&) {});
  });
  return out;
}

std::vector<ProjectedGrad> composite_backward(const TileIndex& tiles,
                                              std::span<const ProjectedGaussian> projected,
                                              const SampleGrid& grid,
                                              std::span<const double> upstream,
                                              const CompositeConfig& cfg) {
  check_order(tiles, projected);
  if (upstream.size() != static_cast<std::size_t>(grid.size())) {
    throw std::invalid_argument("upstream gradient does not match the sample grid");
  }
  std::vector<ProjectedGrad> grads(projected.size());
  std::vector<Contribution> chain;
  for_each_tile_sample(tiles, grid, [&](int t, int k) {
    const double up = upstream[static_cast<std::size_t>(k)];
    if (up == 0.0) return;
    const auto& p = grid.points[static_cast<std::size_t>(k)];
    chain.clear();
    accumulate(tiles.lists[static_cast<std::size_t>(t)], projected, p, cfg,
               [&](const Contribution& c) { chain.push_back(c); });
    // rest = value of everything behind the current primitive divided by
    // the prefix just after it.
    double rest = 0.0;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const auto& g = projected[static_cast<std::size_t>(it->slot)];
      auto& gr = grads[static_cast<std::size_t>(it->slot)];
      const double d_s = it->prefix * it->a;
      const double d_a = it->prefix * (g.signal - it->e * rest);
      const double d_e = it->prefix * (1.0 - it->a) * rest;
      rest = g.signal * it->a + (1.0 - it->a) * it->e * rest;

      gr.signal += up * d_s;
      gr.opacity += up * d_a * it->g;
      gr.attenuation += up * d_e * it->g;
      const double d_g = d_a * g.opacity - d_e * (1.0 - g.attenuation);
      const double d_m = up * d_g * footprint_derivative(it->m);
      const double du = wrap_degrees(p.u - g.center.u);
      const double dv = p.v - g.center.v;
      gr.u -= d_m * 2.0 * (g.conic[0] * du + g.conic[1] * dv);
      gr.v -= d_m * 2.0 * (g.conic[1] * du + g.conic[2] * dv);
      gr.conic_a += d_m * du * du;
      gr.conic_b += d_m * 2.0 * du * dv;
      gr.conic_c += d_m * dv * dv;
    }
  });
  return grads;
}

}  // namespace rfsplat::render
