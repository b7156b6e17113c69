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

#include <Eigen/Core>

#include "rfsplat/ga/multivector.hpp"

namespace rfsplat::ga {

// Sign applied when a single vector acts as a mirror. The negated form
// x' = -n x n^-1 reflects x in the hyperplane orthogonal to n.
enum class ReflectionSign { kNegated, kPlain };

// An invertible multivector acting by conjugation. Rotors are even versors;
// a unit vector is the odd versor of a reflection.
class Versor {
 public:
  explicit Versor(Multivector mv, bool normalized = false)
      : mv_(std::move(mv)), normalized_(normalized) {}

  static Versor identity(const Signature& sig = {});
  // R = cos(angle/2) - sin(angle/2) B for the unit bivector B of `plane`.
  // Rotates within the plane by `angle` (e1 towards e2 for plane e12).
  static Versor rotor(const Multivector& plane, double angle);
  // Right-handed rotation by `angle` about a spatial axis.
  static Versor rotor_about_axis(const Eigen::Vector3d& axis, double angle,
                                 const Signature& sig = {});
  // Unit spatial vector n; acts as a mirror with the plane orthogonal to n.
  static Versor reflection(const Eigen::Vector3d& normal, const Signature& sig = {});

  const Multivector& mv() const { return mv_; }
  const Signature& signature() const { return mv_.signature(); }
  bool normalized() const { return normalized_; }

  // Scalar part of I * reverse(I).
  double norm_squared() const;
  // Rescales so that |I reverse(I)| = 1; throws SingularOperatorError if the
  // non-degenerate part vanishes.
  Versor normalize() const;
  // reverse(I) / <I reverse(I)>_0; throws SingularOperatorError when the
  // scalar norm is below 1e-12.
  Multivector inverse() const;

 private:
  Multivector mv_;
  bool normalized_;
};

// I V I^-1.
Multivector sandwich(const Versor& op, const Multivector& value);

// Mirror `value` with the versor `n` of a reflection. kNegated applies the
// minus sign so that a vector parallel to n is flipped.
Multivector reflect(const Versor& mirror, const Multivector& value,
                    ReflectionSign sign = ReflectionSign::kNegated);

// I = I_1 I_2 ... I_n, so sandwich(compose(ops), V) applies I_n first.
// Throws std::invalid_argument on an empty sequence or mixed signatures.
Versor compose(std::span<const Versor> ops);

}  // namespace rfsplat::ga
