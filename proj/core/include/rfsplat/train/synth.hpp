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

#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "rfsplat/signal/signal.hpp"

namespace rfsplat::train {

// Finite rectangular mirror. The rectangle is spanned by `tangent` (half
// width) and normal x tangent (half height) around `center`.
struct Reflector {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  Eigen::Vector3d tangent = Eigen::Vector3d::UnitX();
  double half_width = 1.0;
  double half_height = 1.0;
  double attenuation = 0.5;  // amplitude factor per bounce, in (0, 1]

  // Throws std::invalid_argument for non-unit or non-orthogonal axes,
  // non-positive extents or an attenuation outside (0, 1].
  void validate() const;
  double signed_distance(const Eigen::Vector3d& p) const { return normal.dot(p - center); }
  bool contains(const Eigen::Vector3d& p, double tol = 1e-9) const;
  Eigen::Vector3d mirror(const Eigen::Vector3d& p) const { return p - 2.0 * signed_distance(p) * normal; }
};

struct SyntheticSceneSpec {
  std::vector<Reflector> reflectors;
  Eigen::Vector3d tx = Eigen::Vector3d::Zero();
  std::vector<Eigen::Vector3d> rx;
  double wavelength = 0.125;  // metres
  signal::ArrayGeometry array = signal::ArrayGeometry::cubic(5);
  int max_bounces = 2;
  bool line_of_sight = true;
  double sample_spacing = 0.25;  // point-cloud spacing on the reflectors
  double reference_power = 1.0;

  void validate() const;
};

struct PropagationPath {
  std::vector<int> reflectors;          // bounce order
  std::vector<Eigen::Vector3d> bounces;
  Eigen::Vector3d arrival = Eigen::Vector3d::Zero();  // unit, from the receiver towards the last leg's origin
  double length = 0.0;
  double attenuation = 0.0;  // per-bounce factors / length
  double phase = 0.0;        // 2 pi length / wavelength, in [0, 2 pi)
};

struct SyntheticMeasurement {
  Eigen::Vector3d rx = Eigen::Vector3d::Zero();
  std::vector<PropagationPath> paths;
  std::vector<signal::Complex> snapshot;  // one value per array element
  signal::AngularSpectrum spectrum;       // peak-normalized
  double rssi_db = 0.0;                   // mean element power over the reference
};

struct SyntheticDataset {
  std::vector<Eigen::Vector3d> points;  // reflector surface samples
  std::vector<SyntheticMeasurement> measurements;
};

// Image-source enumeration of the line-of-sight path and every specular path
// with up to max_bounces bounces on distinct consecutive reflectors. Each
// reflected leg is checked against the geometric-algebra mirror of the
// incoming leg; a disagreement above 1e-9 throws std::logic_error. Throws
// std::invalid_argument when the receiver or transmitter lies on a
// reflector plane.
std::vector<PropagationPath> trace_paths(const SyntheticSceneSpec& spec, const Eigen::Vector3d& rx);

// y_k = sum_l attenuation_l e^{j phase_l} e^{+j 2 pi <p_k, arrival_l>}.
std::vector<signal::Complex> array_snapshot(const signal::ArrayGeometry& array,
                                            std::span<const PropagationPath> paths);

std::vector<Eigen::Vector3d> sample_reflectors(std::span<const Reflector> reflectors, double spacing);

SyntheticDataset synth_generate(const SyntheticSceneSpec& spec);

}  // namespace rfsplat::train
