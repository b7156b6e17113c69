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

#include "rfsplat/render/mercator.hpp"
#include "rfsplat/render/projection.hpp"

namespace rfsplat::render {

// Points at which the splatted field is evaluated, laid out row-major.
struct SampleGrid {
  int rows = 0;
  int cols = 0;
  std::vector<PlanePoint> points;

  int size() const { return rows * cols; }
  const PlanePoint& at(int r, int c) const {
    return points[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
                  static_cast<std::size_t>(c)];
  }

  // Pixel centres of a width x height plane over u in [-180, 180) and
  // v in [-v_max, v_max]; row 0 is the top (largest v).
  static SampleGrid plane(int width, int height, double v_max = Mercator::kDefaultVMax);
  // The 360 x 90 spectrum cells (row = azimuth, col = elevation) mapped
  // through the projection; u carries the azimuth in [0, 360).
  static SampleGrid spectrum(const Mercator& mercator);
};

struct PerceptionPlane {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;

  double at(int r, int c) const {
    return values[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
                  static_cast<std::size_t>(c)];
  }
};

struct TileBounds {
  double u_min, u_max, v_min, v_max;
};

// Tiles are tile_size x tile_size blocks of the sample grid. Each list holds
// positions into the projected array, ordered by (depth, primitive index).
struct TileIndex {
  int tile_size = 16;
  int tile_rows = 0;
  int tile_cols = 0;
  std::vector<std::vector<int>> lists;
  std::vector<TileBounds> bounds;

  int tile_count() const { return tile_rows * tile_cols; }
};

// True when the 3 sigma box of g, repeated every 360 degrees in u, meets b.
bool overlaps(const ProjectedGaussian& g, const TileBounds& b);

TileIndex tile_and_sort(std::span<const ProjectedGaussian> projected, const SampleGrid& grid,
                        int tile_px = 16);

// Mahalanobis distance squared from the centre, with u wrapped.
double footprint_distance(const ProjectedGaussian& g, const PlanePoint& p);
// Peak-1 Gaussian, truncated at 3 sigma and shifted so it reaches zero there
// continuously.
double footprint(double mahalanobis2);
double footprint_derivative(double mahalanobis2);

struct CompositeConfig {
  double min_transmittance = 1e-4;
};

// Front-to-back accumulation. A predecessor j attenuates the signal of later
// primitives by 1 - g_j (1 - delta_j), which equals delta_j on its centre and
// 1 where it does not cover the sample. Throws ContractViolation when a tile
// list is out of order.
PerceptionPlane composite(const TileIndex& tiles, std::span<const ProjectedGaussian> projected,
                          const SampleGrid& grid, const CompositeConfig& cfg = {});

// Gradient of sum_k upstream_k R_k with respect to each projected quantity.
struct ProjectedGrad {
  double u = 0, v = 0;
  double conic_a = 0, conic_b = 0, conic_c = 0;
  double signal = 0, opacity = 0, attenuation = 0;
};

std::vector<ProjectedGrad> composite_backward(const TileIndex& tiles,
                                              std::span<const ProjectedGaussian> projected,
                                              const SampleGrid& grid,
                                              std::span<const double> upstream,
                                              const CompositeConfig& cfg = {});

}  // namespace rfsplat::render
