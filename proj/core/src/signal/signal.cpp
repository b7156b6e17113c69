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

#include "rfsplat/signal/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rfsplat::signal {
namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
}

double wrap_phase(double radians) {
  const double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(radians + std::numbers::pi, two_pi);
  if (w < 0.0) w += two_pi;
  w -= std::numbers::pi;
  // fmod can round onto the excluded upper edge.
  if (w >= std::numbers::pi) w -= two_pi;
  return w;
}

ComplexSample ComplexSample::from_complex(Complex z) {
  return {std::abs(z), wrap_phase(std::arg(z))};
}

ComplexSample superpose(const ComplexSample& x, const MultipathChannel& channel) {
  Complex gain{0.0, 0.0};
  for (const Path& p : channel.paths) gain += std::polar(p.attenuation, p.phase);
  return ComplexSample::from_complex(x.value() * gain);
}

double rssi_from_power(double power, double p0) {
  if (!(p0 > 0.0)) throw std::invalid_argument("reference power P0 must be positive");
  if (power <= 0.0) return kSilentRssi;
  return 10.0 * std::log10(power / p0);
}

double rssi(const ComplexSample& y, double p0) {
  return rssi_from_power(y.amplitude * y.amplitude, p0);
}

void ArrayGeometry::validate() const {
  if (elements.empty()) throw std::invalid_argument("array needs at least one element");
  for (const auto& p : elements) {
    if (!p.allFinite()) throw std::invalid_argument("array element position is not finite");
  }
}

ArrayGeometry ArrayGeometry::uniform_linear(int n, double spacing) {
  if (n < 1) throw std::invalid_argument("uniform_linear needs n >= 1");
  ArrayGeometry g;
  const double centre = 0.5 * (n - 1);
  for (int i = 0; i < n; ++i) g.elements.emplace_back((i - centre) * spacing, 0.0, 0.0);
  return g;
}

ArrayGeometry ArrayGeometry::cubic(int n, double spacing) {
  if (n < 1) throw std::invalid_argument("cubic needs n >= 1");
  ArrayGeometry g;
  const double centre = 0.5 * (n - 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        g.elements.emplace_back((i - centre) * spacing, (j - centre) * spacing,
                                (k - centre) * spacing);
      }
    }
  }
  return g;
}

Eigen::Vector3d unit_direction(double azimuth_deg, double elevation_deg) {
  const double az = azimuth_deg * kDeg;
  const double el = elevation_deg * kDeg;
  return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
}

std::vector<Complex> steering_vector(const ArrayGeometry& geom, double azimuth_deg,
                                     double elevation_deg) {
  const Eigen::Vector3d u = unit_direction(azimuth_deg, elevation_deg);
  std::vector<Complex> a;
  a.reserve(geom.size());
  for (const auto& p : geom.elements) {
    a.push_back(std::polar(1.0, 2.0 * std::numbers::pi * p.dot(u)));
  }
  return a;
}

AngularSpectrum::AngularSpectrum(std::vector<double> values) : data_(std::move(values)) {
  if (data_.size() != static_cast<std::size_t>(kCells)) {
    throw std::invalid_argument("angular spectrum must have 360x90 = 32400 cells, got " +
                                std::to_string(data_.size()));
  }
  for (double v : data_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("angular spectrum entries must be finite and non-negative");
    }
  }
}

double AngularSpectrum::max() const { return *std::max_element(data_.begin(), data_.end()); }

void AngularSpectrum::normalize_peak() {
  const double peak = max();
  if (peak <= 0.0) return;
  for (double& v : data_) v /= peak;
}

AngularSpectrum angle_power_spectrum(const ArrayGeometry& geom, std::span<const Complex> y) {
  if (y.size() != geom.size()) {
    throw std::invalid_argument("snapshot length " + std::to_string(y.size()) +
                                " does not match array size " + std::to_string(geom.size()));
  }
  AngularSpectrum out;
  for (int az = 0; az < AngularSpectrum::kAzimuthBins; ++az) {
    for (int el = 0; el < AngularSpectrum::kElevationBins; ++el) {
      const auto a = steering_vector(geom, az, el);
      Complex acc{0.0, 0.0};
      for (std::size_t k = 0; k < a.size(); ++k) acc += std::conj(a[k]) * y[k];
      out.at(az, el) = std::norm(acc);
    }
  }
  return out;
}

Beamformer::Beamformer(ArrayGeometry geom) : geom_(std::move(geom)) {
  geom_.validate();
  steering_.reserve(static_cast<std::size_t>(AngularSpectrum::kCells) * geom_.size());
  for (int az = 0; az < AngularSpectrum::kAzimuthBins; ++az) {
    for (int el = 0; el < AngularSpectrum::kElevationBins; ++el) {
      const auto a = steering_vector(geom_, az, el);
      steering_.insert(steering_.end(), a.begin(), a.end());
    }
  }
}

AngularSpectrum Beamformer::spectrum(std::span<const Complex> y) const {
  const std::size_t n = geom_.size();
  if (y.size() != n) {
    throw std::invalid_argument("snapshot length " + std::to_string(y.size()) +
                                " does not match array size " + std::to_string(n));
  }
  AngularSpectrum out;
  auto values = out.values();
  for (int cell = 0; cell < AngularSpectrum::kCells; ++cell) {
    const Complex* a = steering_.data() + static_cast<std::size_t>(cell) * n;
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) acc += std::conj(a[k]) * y[k];
    values[cell] = std::norm(acc);
  }
  return out;
}

}  // namespace rfsplat::signal
