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

#include <complex>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace rfsplat::signal {

using Complex = std::complex<double>;

// X = A e^{j theta} with A >= 0 and theta wrapped into [-pi, pi).
struct ComplexSample {
  double amplitude = 0.0;
  double phase = 0.0;

  static ComplexSample from_complex(Complex z);
  Complex value() const { return std::polar(amplitude, phase); }
};

// Wraps an angle into [-pi, pi).
double wrap_phase(double radians);

struct Path {
  double attenuation = 0.0;  // linear, >= 0
  double phase = 0.0;        // radians
};

struct MultipathChannel {
  std::vector<Path> paths;
};

// Y = X * sum_l alpha_l e^{j phi_l}. An empty channel gives zero.
ComplexSample superpose(const ComplexSample& x, const MultipathChannel& channel);

// Sentinel for the RSSI of zero received power.
inline constexpr double kSilentRssi = -std::numeric_limits<double>::infinity();
inline bool is_silent(double rssi_db) { return rssi_db == kSilentRssi; }

// 10 log10(|Y|^2 / P0). Returns kSilentRssi for |Y| = 0; throws
// std::invalid_argument for p0 <= 0.
double rssi(const ComplexSample& y, double p0);
// Same law for an already-squared power.
double rssi_from_power(double power, double p0);

// Element positions in wavelengths.
struct ArrayGeometry {
  std::vector<Eigen::Vector3d> elements;

  std::size_t size() const { return elements.size(); }
  // Throws std::invalid_argument for an empty or non-finite layout.
  void validate() const;

  // n elements along x at `spacing` wavelengths, centred on the origin.
  static ArrayGeometry uniform_linear(int n, double spacing = 0.5);
  // n x n x n elements on a cubic lattice, centred on the origin.
  static ArrayGeometry cubic(int n, double spacing = 0.5);
};

// Unit direction for azimuth (from +x towards +y) and elevation (from the xy
// plane towards +z), both in degrees.
Eigen::Vector3d unit_direction(double azimuth_deg, double elevation_deg);

// Element k is exp(+j 2 pi <p_k, u(az, el)>).
std::vector<Complex> steering_vector(const ArrayGeometry& geom, double azimuth_deg,
                                     double elevation_deg);

// Relative power over a fixed 360 x 90 one-degree grid: azimuth 0..359 and
// elevation 0..89. Stored azimuth-major, so (az, el) lives at az * 90 + el.
class AngularSpectrum {
 public:
  static constexpr int kAzimuthBins = 360;
  static constexpr int kElevationBins = 90;
  static constexpr int kCells = kAzimuthBins * kElevationBins;

  AngularSpectrum() : data_(kCells, 0.0) {}
  // Throws std::invalid_argument unless values has kCells finite,
  // non-negative entries.
  explicit AngularSpectrum(std::vector<double> values);

  double at(int azimuth, int elevation) const { return data_[index(azimuth, elevation)]; }
  double& at(int azimuth, int elevation) { return data_[index(azimuth, elevation)]; }
  static int index(int azimuth, int elevation) { return azimuth * kElevationBins + elevation; }

  std::span<const double> values() const { return data_; }
  std::span<double> values() { return data_; }

  double max() const;
  // Divides by the peak so the maximum becomes 1; a zero spectrum is left as is.
  void normalize_peak();

  friend bool operator==(const AngularSpectrum&, const AngularSpectrum&) = default;

 private:
  std::vector<double> data_;
};

// Psi(az, el) = |a^H(az, el) y|^2 at every grid cell. Throws
// std::invalid_argument if y.size() differs from the element count.
AngularSpectrum angle_power_spectrum(const ArrayGeometry& geom, std::span<const Complex> y);

// Precomputes steering vectors for the whole grid so repeated spectra of the
// same array avoid the trigonometry. Produces the same values as
// angle_power_spectrum.
class Beamformer {
 public:
  explicit Beamformer(ArrayGeometry geom);
  const ArrayGeometry& geometry() const { return geom_; }
  AngularSpectrum spectrum(std::span<const Complex> y) const;

 private:
  ArrayGeometry geom_;
  std::vector<Complex> steering_;  // kCells x elements
};

}  // namespace rfsplat::signal
