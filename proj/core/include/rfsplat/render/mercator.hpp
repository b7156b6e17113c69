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

#include <cmath>
#include <numbers>
#include <optional>

#include <Eigen/Core>

namespace rfsplat::render {

// Position on the receiver perception plane, in degrees.
struct PlanePoint {
  double u = 0.0;
  double v = 0.0;
};

// u = longitude, v = alpha * ln tan(pi/4 + latitude/2), both in degrees.
//
// alpha is fixed by asking v(max_latitude) = v_max. The map is conformal
// only when alpha = 180/pi, which for v_max = 60 puts max_latitude at about
// 51.3 degrees; that pairing is the default.
class Mercator {
 public:
  static constexpr double kDefaultVMax = 60.0;

  Mercator() : Mercator(conformal_latitude(kDefaultVMax)) {}
  // Throws std::invalid_argument unless 0 < max_latitude < 90 and v_max > 0.
  explicit Mercator(double max_latitude_deg, double v_max_deg = kDefaultVMax);

  // Latitude at which the conformal scale reaches v_max.
  static double conformal_latitude(double v_max_deg);

  double alpha() const { return alpha_; }
  double max_latitude_deg() const { return max_latitude_; }
  double v_max_deg() const { return v_max_; }
  // Directions beyond this latitude are reported out of view. Defaults to
  // max_latitude; widening it keeps the same scale.
  double view_limit_deg() const { return view_limit_; }
  Mercator with_view_limit(double limit_deg) const;

  double v_of_latitude(double latitude_deg) const;
  double latitude_of_v(double v_deg) const;

  // Direction from the receiver in its own frame. Returns nullopt when the
  // latitude exceeds the view limit; throws std::invalid_argument for a zero
  // direction. u lies in [-180, 180).
  std::optional<PlanePoint> project(const Eigen::Vector3d& direction) const;

 private:
  double max_latitude_;
  double v_max_;
  double alpha_;
  double view_limit_;
};

// Shortest signed azimuth difference, in [-180, 180].
inline double wrap_degrees(double d) { return std::remainder(d, 360.0); }

}  // namespace rfsplat::render
