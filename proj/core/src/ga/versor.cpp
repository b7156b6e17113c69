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

#include "rfsplat/ga/versor.hpp"

#include <cmath>
#include <stdexcept>

#include "rfsplat/errors.hpp"

namespace rfsplat::ga {
namespace {
constexpr double kSingularTolerance = 1e-12;
}

Versor Versor::identity(const Signature& sig) { return Versor(Multivector::scalar(1.0, sig), true); }

Versor Versor::rotor(const Multivector& plane, double angle) {
  Multivector b = grade_project(plane, 2);
  // Magnitude over the spatial blades; e4-containing parts would make the
  // rotor a boost or a translation and are not normalized here.
  double n2 = 0.0;
  for (int i = kE12; i <= kE34; ++i) {
    if (!blade_has_e4(i)) n2 += b[i] * b[i];
  }
  if (n2 <= 0.0) throw std::invalid_argument("rotor plane has no spatial bivector part");
  b *= 1.0 / std::sqrt(n2);
  Multivector r = Multivector::scalar(std::cos(0.5 * angle), plane.signature()) - std::sin(0.5 * angle) * b;
  return Versor(r, true);
}

Versor Versor::rotor_about_axis(const Eigen::Vector3d& axis, double angle, const Signature& sig) {
  const double n = axis.norm();
  if (n == 0.0) throw std::invalid_argument("rotation axis must be nonzero");
  const Eigen::Vector3d a = axis / n;
  // Bivector dual to the axis: a1 e23 + a2 e31 + a3 e12, with e31 = -e13.
  Multivector plane(sig);
  plane[kE23] = a.x();
  plane[kE13] = -a.y();
  plane[kE12] = a.z();
  return rotor(plane, angle);
}

Versor Versor::reflection(const Eigen::Vector3d& normal, const Signature& sig) {
  const double n = normal.norm();
  if (n == 0.0) throw std::invalid_argument("reflection normal must be nonzero");
  return Versor(Multivector::vector(normal / n, sig), true);
}

double Versor::norm_squared() const { return scalar_part(mv_ * reverse(mv_)); }

Versor Versor::normalize() const {
  const double n2 = norm_squared();
  if (std::abs(n2) < kSingularTolerance) {
    throw SingularOperatorError("cannot normalize a versor with vanishing norm");
  }
  return Versor(mv_ * (1.0 / std::sqrt(std::abs(n2))), true);
}

Multivector Versor::inverse() const {
  const double n2 = norm_squared();
  if (std::abs(n2) < kSingularTolerance) {
    throw SingularOperatorError("versor is not invertible: <I ~I>_0 = " + std::to_string(n2));
  }
  return reverse(mv_) * (1.0 / n2);
}

Multivector sandwich(const Versor& op, const Multivector& value) {
  return op.mv() * value * op.inverse();
}

Multivector reflect(const Versor& mirror, const Multivector& value, ReflectionSign sign) {
  Multivector out = sandwich(mirror, value);
  if (sign == ReflectionSign::kNegated) out *= -1.0;
  return out;
}

Versor compose(std::span<const Versor> ops) {
  if (ops.empty()) throw std::invalid_argument("compose needs at least one operator");
  Multivector acc = ops.front().mv();
  bool normalized = ops.front().normalized();
  for (std::size_t i = 1; i < ops.size(); ++i) {
    acc = acc * ops[i].mv();
    normalized = normalized && ops[i].normalized();
  }
  return Versor(acc, normalized);
}

}  // namespace rfsplat::ga
