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

#include "rfsplat/train/synth.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "rfsplat/ga/versor.hpp"

namespace rfsplat::train {
namespace {

constexpr double kOnPlane = 1e-9;
constexpr double kOracleTolerance = 1e-9;

// Intersection of the segment a -> b with the reflector's plane.
std::optional<Eigen::Vector3d> cross_plane(const Reflector& r, const Eigen::Vector3d& a,
                                           const Eigen::Vector3d& b) {
  const double da = r.signed_distance(a), db = r.signed_distance(b);
  if (da * db >= 0.0) return std::nullopt;
  const double s = da / (da - db);
  return a + s * (b - a);
}

void check_reflection(const Reflector& r, const Eigen::Vector3d& from, const Eigen::Vector3d& at,
                      const Eigen::Vector3d& to) {
  const Eigen::Vector3d in = (at - from).normalized();
  const Eigen::Vector3d out = (to - at).normalized();
  const auto mirror = ga::Versor::reflection(r.normal);
  const Eigen::Vector3d ga_out = ga::reflect(mirror, ga::Multivector::vector(in)).spatial_vector();
  if ((ga_out - out).norm() > kOracleTolerance) {
    throw std::logic_error("image-source leg disagrees with the versor reflection");
  }
}

PropagationPath finish(std::vector<int> refl, std::vector<Eigen::Vector3d> bounces,
                       const Eigen::Vector3d& last_origin, const Eigen::Vector3d& rx, double length,
                       double gain, double wavelength) {
  PropagationPath p;
  p.reflectors = std::move(refl);
  p.bounces = std::move(bounces);
  p.arrival = (last_origin - rx).normalized();
  p.length = length;
  p.attenuation = gain / length;
  p.phase = std::fmod(2.0 * M_PI * length / wavelength, 2.0 * M_PI);
  return p;
}

}  // namespace

void Reflector::validate() const {
  if (std::abs(normal.norm() - 1.0) > 1e-9 || std::abs(tangent.norm() - 1.0) > 1e-9 ||
      std::abs(normal.dot(tangent)) > 1e-9) {
    throw std::invalid_argument("reflector axes must be orthonormal");
  }
  if (!(half_width > 0.0) || !(half_height > 0.0)) throw std::invalid_argument("reflector extent must be positive");
  if (!(attenuation > 0.0 && attenuation <= 1.0)) {
    throw std::invalid_argument("reflector attenuation must lie in (0, 1]");
  }
}

bool Reflector::contains(const Eigen::Vector3d& p, double tol) const {
  const Eigen::Vector3d d = p - center;
  const Eigen::Vector3d bitangent = normal.cross(tangent);
  return std::abs(d.dot(tangent)) <= half_width + tol && std::abs(d.dot(bitangent)) <= half_height + tol;
}

void SyntheticSceneSpec::validate() const {
  for (const auto& r : reflectors) r.validate();
  if (reflectors.empty() && !line_of_sight) {
    throw std::invalid_argument("a scene needs a reflector or a line-of-sight path");
  }
  if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be positive");
  if (max_bounces < 0 || max_bounces > 2) throw std::invalid_argument("max_bounces must lie in 0..2");
  if (!(sample_spacing > 0.0)) throw std::invalid_argument("sample spacing must be positive");
  if (!(reference_power > 0.0)) throw std::invalid_argument("reference power must be positive");
  array.validate();
}

std::vector<PropagationPath> trace_paths(const SyntheticSceneSpec& spec, const Eigen::Vector3d& rx) {
  const auto& refl = spec.reflectors;
  for (const auto& r : refl) {
    if (std::abs(r.signed_distance(rx)) < kOnPlane) throw std::invalid_argument("receiver lies on a reflector plane");
    if (std::abs(r.signed_distance(spec.tx)) < kOnPlane) {
      throw std::invalid_argument("transmitter lies on a reflector plane");
    }
  }
  if ((rx - spec.tx).norm() < kOnPlane) throw std::invalid_argument("receiver coincides with the transmitter");
  std::vector<PropagationPath> paths;
  if (spec.line_of_sight) {
    paths.push_back(finish({}, {}, spec.tx, rx, (spec.tx - rx).norm(), 1.0, spec.wavelength));
  }
  const int n = static_cast<int>(refl.size());
  if (spec.max_bounces >= 1) {
    for (int a = 0; a < n; ++a) {
      const Reflector& r = refl[static_cast<std::size_t>(a)];
      const Eigen::Vector3d image = r.mirror(spec.tx);
      const auto hit = cross_plane(r, rx, image);
      if (!hit || !r.contains(*hit)) continue;
      check_reflection(r, spec.tx, *hit, rx);
      paths.push_back(finish({a}, {*hit}, *hit, rx, (rx - image).norm(), r.attenuation, spec.wavelength));
    }
  }
  if (spec.max_bounces >= 2) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        const Reflector& r1 = refl[static_cast<std::size_t>(a)];
        const Reflector& r2 = refl[static_cast<std::size_t>(b)];
        const Eigen::Vector3d i1 = r1.mirror(spec.tx);
        const Eigen::Vector3d i2 = r2.mirror(i1);
        const auto h2 = cross_plane(r2, rx, i2);
        if (!h2 || !r2.contains(*h2)) continue;
        const auto h1 = cross_plane(r1, *h2, i1);
        if (!h1 || !r1.contains(*h1)) continue;
        // Both legs must stay on the reflecting sides.
        if (r1.signed_distance(spec.tx) * r1.signed_distance(*h2) <= 0.0) continue;
        if (r2.signed_distance(*h1) * r2.signed_distance(rx) <= 0.0) continue;
        check_reflection(r1, spec.tx, *h1, *h2);
        check_reflection(r2, *h1, *h2, rx);
        paths.push_back(finish({a, b}, {*h1, *h2}, *h2, rx, (rx - i2).norm(),
                               r1.attenuation * r2.attenuation, spec.wavelength));
      }
    }
  }
  return paths;
}

std::vector<signal::Complex> array_snapshot(const signal::ArrayGeometry& array,
                                            std::span<const PropagationPath> paths) {
  std::vector<signal::Complex> y(array.size(), signal::Complex(0.0, 0.0));
  for (const auto& p : paths) {
    const signal::Complex c = std::polar(p.attenuation, p.phase);
    for (std::size_t k = 0; k < array.size(); ++k) {
      y[k] += c * std::polar(1.0, 2.0 * M_PI * array.elements[k].dot(p.arrival));
    }
  }
  return y;
}

std::vector<Eigen::Vector3d> sample_reflectors(std::span<const Reflector> reflectors, double spacing) {
  std::vector<Eigen::Vector3d> pts;
  for (const auto& r : reflectors) {
    const Eigen::Vector3d bitangent = r.normal.cross(r.tangent);
    const int nw = static_cast<int>(std::floor(2.0 * r.half_width / spacing)) + 1;
    const int nh = static_cast<int>(std::floor(2.0 * r.half_height / spacing)) + 1;
    const double w0 = -0.5 * (nw - 1) * spacing, h0 = -0.5 * (nh - 1) * spacing;
    for (int i = 0; i < nw; ++i) {
      for (int j = 0; j < nh; ++j) {
        pts.push_back(r.center + (w0 + i * spacing) * r.tangent + (h0 + j * spacing) * bitangent);
      }
    }
  }
  return pts;
}

SyntheticDataset synth_generate(const SyntheticSceneSpec& spec) {
  spec.validate();
  SyntheticDataset out;
  out.points = sample_reflectors(spec.reflectors, spec.sample_spacing);
  const signal::Beamformer beamformer(spec.array);
  for (const auto& rx : spec.rx) {
    SyntheticMeasurement m;
    m.rx = rx;
    m.paths = trace_paths(spec, rx);
    m.snapshot = array_snapshot(spec.array, m.paths);
    m.spectrum = beamformer.spectrum(m.snapshot);
    m.spectrum.normalize_peak();
    double power = 0.0;
    for (const auto& v : m.snapshot) power += std::norm(v);
    m.rssi_db = signal::rssi_from_power(power / static_cast<double>(m.snapshot.size()), spec.reference_power);
    out.measurements.push_back(std::move(m));
  }
  return out;
}

}  // namespace rfsplat::train
