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


#include "rfsplat/io/heatmap.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include "rfsplat/errors.hpp"
#include "csv.hpp"

namespace rfsplat::io {

Rgb viridis(double t) {
  static constexpr std::uint8_t table[256][3] = {
#include "viridis_table.inc"
  };
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0);
  const auto* c = table[std::lround(t * 255.0)];
  return {c[0], c[1], c[2]};
}

Image::Image(int w, int h, Rgb fill) : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3) {
  if (w <= 0 || h <= 0) throw std::invalid_argument("image dimensions must be positive");
  for (std::size_t i = 0; i < rgb.size(); i += 3) std::copy(fill.begin(), fill.end(), rgb.begin() + static_cast<std::ptrdiff_t>(i));
}

void Image::set(int x, int y, Rgb c) {
  if (x < 0 || y < 0 || x >= width || y >= height) return;
  const auto o = (static_cast<std::size_t>(y) * width + x) * 3;
  std::copy(c.begin(), c.end(), rgb.begin() + static_cast<std::ptrdiff_t>(o));
}

Rgb Image::get(int x, int y) const {
  const auto o = (static_cast<std::size_t>(y) * width + x) * 3;
  return {rgb[o], rgb[o + 1], rgb[o + 2]};
}

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};

[[noreturn]] void png_fail(png_structp, png_const_charp msg) { throw FormatError(std::string("png: ") + msg); }
void png_warn(png_structp, png_const_charp) {}

}  // namespace

void write_png(const std::filesystem::path& path, const Image& img) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "wb"));
  if (!f) throw std::runtime_error("cannot write " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_fail, png_warn);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("png: out of memory");
  }
  try {
    png_init_io(png, f.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width), static_cast<png_uint_32>(img.height), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    std::vector<png_text> text;
    for (const auto& [k, v] : img.text) {
      png_text t{};
      t.compression = PNG_TEXT_COMPRESSION_NONE;
      t.key = const_cast<char*>(k.c_str());
      t.text = const_cast<char*>(v.c_str());
      text.push_back(t);
    }
    if (!text.empty()) png_set_text(png, info, text.data(), static_cast<int>(text.size()));
    png_write_info(png, info);
    for (int y = 0; y < img.height; ++y) {
      png_write_row(png, img.rgb.data() + static_cast<std::size_t>(y) * img.width * 3);
    }
    png_write_end(png, nullptr);
  } catch (...) {
    png_destroy_write_struct(&png, &info);
    throw;
  }
  png_destroy_write_struct(&png, &info);
}

Image read_png(const std::filesystem::path& path) {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "rb"));
  if (!f) throw std::runtime_error("cannot open " + path.string());
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_fail, png_warn);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw std::runtime_error("png: out of memory");
  }
  Image img;
  try {
    png_init_io(png, f.get());
    png_read_info(png, info);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_set_palette_to_rgb(png);
    png_set_gray_to_rgb(png);
    png_read_update_info(png, info);
    img = Image(static_cast<int>(png_get_image_width(png, info)), static_cast<int>(png_get_image_height(png, info)));
    for (int y = 0; y < img.height; ++y) {
      png_read_row(png, img.rgb.data() + static_cast<std::size_t>(y) * img.width * 3, nullptr);
    }
    png_read_end(png, info);
    png_textp text = nullptr;
    const int n = png_get_text(png, info, &text, nullptr);
    for (int i = 0; i < n; ++i) img.text[text[i].key] = text[i].text;
  } catch (...) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw;
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

Image heatmap(const ad::Tensor& grid, const HeatmapOptions& opt) {
  if (grid.size() == 0) throw std::invalid_argument("heatmap of an empty grid");
  std::vector<double> v = grid.data;
  if (opt.decibels) {
    const double peak = *std::max_element(v.begin(), v.end());
    const double ref = peak > 0.0 ? peak : 1.0;
    for (double& x : v) x = x > 0.0 ? std::max(10.0 * std::log10(x / ref), opt.floor_db) : opt.floor_db;
  }
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  const double lo = opt.lo.value_or(*mn);
  double hi = opt.hi.value_or(*mx);
  if (!(hi > lo)) hi = lo + 1.0;
  const int w = opt.spectrum_layout ? grid.rows : grid.cols;
  const int h = opt.spectrum_layout ? grid.cols : grid.rows;
  Image img(w, h);
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      const double t = (v[static_cast<std::size_t>(r) * grid.cols + c] - lo) / (hi - lo);
      if (opt.spectrum_layout) {
        img.set(r, h - 1 - c, viridis(t));
      } else {
        img.set(c, r, viridis(t));
      }
    }
  }
  img.text["Software"] = "rfsplat";
  img.text["colormap"] = "viridis";
  img.text["units"] = opt.decibels ? "dB rel. peak" : "linear";
  img.text["range_min"] = detail::format_double(lo);
  img.text["range_max"] = detail::format_double(hi);
  return img;
}

Image cdf_plot(const Cdf& cdf, int width, int height) {
  Image img(width, height);
  const int m = 20;  // margin
  const Rgb axis{0, 0, 0}, line = viridis(0.25);
  for (int x = m; x < width - m; ++x) img.set(x, height - m, axis);
  for (int y = m; y < height - m; ++y) img.set(m, y, axis);
  const auto px = [&](double s) { return m + static_cast<int>(std::lround(std::clamp(s, 0.0, 1.0) * (width - 2 * m - 1))); };
  const auto py = [&](double q) { return height - m - static_cast<int>(std::lround(q * (height - 2 * m - 1))); };
  double prev_q = 0.0;
  int prev_x = px(0.0);
  for (std::size_t i = 0; i < cdf.values.size(); ++i) {
    const int x = px(cdf.values[i]);
    for (int xx = prev_x; xx <= x; ++xx) img.set(xx, py(prev_q), line);
    const double q = cdf.quantiles[i];
    for (int yy = py(q); yy <= py(prev_q); ++yy) img.set(x, yy, line);
    prev_q = q;
    prev_x = x;
  }
  for (int xx = prev_x; xx <= px(1.0); ++xx) img.set(xx, py(prev_q), line);
  img.text["Software"] = "rfsplat";
  img.text["x_axis"] = "SSIM 0..1";
  img.text["y_axis"] = "empirical CDF 0..1";
  return img;
}

Image series_plot(const std::vector<double>& y, bool log_scale, int width, int height) {
  Image img(width, height);
  const int m = 20;
  const Rgb axis{0, 0, 0}, line = viridis(0.25);
  for (int x = m; x < width - m; ++x) img.set(x, height - m, axis);
  for (int yy = m; yy < height - m; ++yy) img.set(m, yy, axis);
  std::vector<double> v;
  for (double x : y) {
    if (!std::isfinite(x) || (log_scale && x <= 0.0)) continue;
    v.push_back(log_scale ? std::log10(x) : x);
  }
  if (v.empty()) return img;
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  const double lo = *mn, hi = *mx > *mn ? *mx : *mn + 1.0;
  const auto px = [&](std::size_t i) {
    return m + static_cast<int>(v.size() > 1 ? std::lround(static_cast<double>(i) * (width - 2 * m - 1) / (v.size() - 1)) : 0);
  };
  const auto py = [&](double val) { return height - m - static_cast<int>(std::lround((val - lo) / (hi - lo) * (height - 2 * m - 1))); };
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int x0 = px(i), y0 = py(v[i]);
    const int x1 = i + 1 < v.size() ? px(i + 1) : x0, y1 = i + 1 < v.size() ? py(v[i + 1]) : y0;
    // Vertical run at x0 then a flat step to x1 keeps the polyline connected.
    for (int yy = std::min(y0, y1); yy <= std::max(y0, y1); ++yy) img.set(x0, yy, line);
    for (int xx = x0; xx <= x1; ++xx) img.set(xx, y1, line);
  }
  img.text["Software"] = "rfsplat";
  img.text["units"] = log_scale ? "log10" : "linear";
  img.text["range_min"] = detail::format_double(lo);
  img.text["range_max"] = detail::format_double(hi);
  return img;
}

}  // namespace rfsplat::io
