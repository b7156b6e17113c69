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

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rfsplat/autodiff/tape.hpp"
#include "rfsplat/io/metrics.hpp"

namespace rfsplat::io {

using Rgb = std::array<std::uint8_t, 3>;

// Perceptually uniform viridis map (256 levels), t clamped to [0, 1].
Rgb viridis(double t);

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel
  std::map<std::string, std::string> text;

  Image() = default;
  Image(int w, int h, Rgb fill = {255, 255, 255});
  void set(int x, int y, Rgb c);
  Rgb get(int x, int y) const;
};

void write_png(const std::filesystem::path& path, const Image& img);
Image read_png(const std::filesystem::path& path);

struct HeatmapOptions {
  bool decibels = true;          // 10 log10 of the linear values
  double floor_db = -40.0;       // relative to the peak when decibels is set
  std::optional<double> lo, hi;  // explicit colour range, in output units
  // Spectrum grids are azimuth-major; transpose so azimuth runs along x and
  // elevation upwards.
  bool spectrum_layout = false;
};

// The colour range lands in the PNG text chunks "range_min", "range_max" and
// "units" next to "colormap" = "viridis".
Image heatmap(const ad::Tensor& grid, const HeatmapOptions& opt = {});

// Step plot of an empirical CDF over [0, 1] on a white canvas.
Image cdf_plot(const Cdf& cdf, int width = 400, int height = 300);

// Polyline of y against its index, optionally on a log10 axis. The y range is
// stored in the "range_min" / "range_max" text chunks.
Image series_plot(const std::vector<double>& y, bool log_scale = true, int width = 600, int height = 300);

}  // namespace rfsplat::io
