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

#include "rfsplat/render/mercator.hpp"

#include <stdexcept>

namespace rfsplat::render {
namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
}

Mercator::Mercator(double max_latitude_deg, double v_max_deg)
    : max_latitude_(max_latitude_deg), v_max_(v_max_deg), view_limit_(max_latitude_deg) {
  if (!(max_latitude_deg > 0.0 && max_latitude_deg < 90.0)) {
    throw std::invalid_argument("Mercator latitude range must be inside (0, 90) degrees");
  }
  if (!(v_max_deg > 0.0)) throw std::invalid_argument("Mercator v_max must be positive");
  alpha_ = v_max_ / std::asinh(std::tan(max_latitude_ * kDeg));
}

double Mercator::conformal_latitude(double v_max_deg) {
  return std::atan(std::sinh(v_max_deg * kDeg)) / kDeg;
}

Mercator Mercator::with_view_limit(double limit_deg) const {
  if (!(limit_deg > 0.0 && limit_deg < 90.0)) {
    throw std::invalid_argument("view limit must be inside (0, 90) degrees");
  }
  Mercator m = *this;
  m.view_limit_ = limit_deg;
  return m;
}

double Mercator::v_of_latitude(double latitude_deg) const {
  // ln tan(pi/4 + lat/2) written as asinh(tan lat), which is exactly zero at
  // the equator.
  return alpha_ * std::asinh(std::tan(latitude_deg * kDeg));
}

double Mercator::latitude_of_v(double v_deg) const {
  return std::atan(std::sinh(v_deg / alpha_)) / kDeg;
}

std::optional<PlanePoint> Mercator::project(const Eigen::Vector3d& direction) const {
  const double r = direction.norm();
  if (!(r > 0.0)) throw std::invalid_argument("cannot project a zero direction");
  const double rho = std::hypot(direction.x(), direction.y());
  const double lat = std::atan2(direction.z(), rho) / kDeg;
  if (std::abs(lat) > view_limit_) return std::nullopt;
  double u = std::atan2(direction.y(), direction.x()) / kDeg;
  if (u >= 180.0) u -= 360.0;
  return PlanePoint{u, alpha_ * std::asinh(direction.z() / rho)};
}

}  // namespace rfsplat::render
