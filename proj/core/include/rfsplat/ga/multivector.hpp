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
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace rfsplat::ga {

inline constexpr int kBladeCount = 16;
inline constexpr int kMaxGrade = 4;

// Counts of basis vectors squaring to +1, -1 and 0. The first p basis vectors
// are positive, the next q negative and the last r null, so (3,0,1) makes e4
// degenerate and (3,1,0) makes e4 the timelike direction.
struct Signature {
  int p = 3;
  int q = 0;
  int r = 1;

  constexpr Signature() = default;
  // Throws std::invalid_argument unless p, q, r >= 0 and p + q + r == 4.
  Signature(int positive, int negative, int null);

  static constexpr Signature projective() { return {}; }
  static Signature minkowski() { return {3, 1, 0}; }

  // Square of basis vector e_{i+1}: +1, -1 or 0.
  int metric(int basis_index) const;

  friend bool operator==(const Signature&, const Signature&) = default;
};

std::string to_string(const Signature& sig);

// Blade indices, grouped by grade and ordered lexicographically within a grade.
enum Blade : int {
  kScalar = 0,
  kE1, kE2, kE3, kE4,
  kE12, kE13, kE14, kE23, kE24, kE34,
  kE123, kE124, kE134, kE234,
  kE1234,
};

int blade_grade(int blade);
// Bit i set means basis vector e_{i+1} participates.
unsigned blade_mask(int blade);
int blade_from_mask(unsigned mask);
std::string_view blade_name(int blade);
// True if the blade contains the fourth basis vector.
bool blade_has_e4(int blade);

// Product of basis blades i and j is sign[i][j] * blade(index[i][j]).
struct CayleyTable {
  Signature signature;
  std::array<std::array<std::int8_t, kBladeCount>, kBladeCount> index{};
  std::array<std::array<std::int8_t, kBladeCount>, kBladeCount> sign{};
};

// Tables are built once per signature and live for the whole program.
const CayleyTable& cayley_table(const Signature& sig);

using Coeffs = std::array<double, kBladeCount>;

// Dense product kernel; out must not alias a or b.
void geometric_product(std::span<const double, kBladeCount> a,
                       std::span<const double, kBladeCount> b,
                       std::span<double, kBladeCount> out, const CayleyTable& table);

class Multivector {
 public:
  Multivector() = default;
  explicit Multivector(const Signature& sig) : sig_(sig) {}
  Multivector(const Coeffs& coeffs, const Signature& sig) : c_(coeffs), sig_(sig) {}

  static Multivector scalar(double value, const Signature& sig = {});
  static Multivector blade(int index, double coeff = 1.0, const Signature& sig = {});
  // Grade-1 element x e1 + y e2 + z e3 + w e4.
  static Multivector vector(double x, double y, double z, double w = 0.0,
                            const Signature& sig = {});
  static Multivector vector(const Eigen::Vector3d& v, const Signature& sig = {});

  double operator[](int blade) const { return c_[blade]; }
  double& operator[](int blade) { return c_[blade]; }
  const Coeffs& coeffs() const { return c_; }
  Coeffs& coeffs() { return c_; }
  const Signature& signature() const { return sig_; }

  // Spatial (e1, e2, e3) part of the grade-1 component.
  Eigen::Vector3d spatial_vector() const { return {c_[kE1], c_[kE2], c_[kE3]}; }

  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(double s);

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator-(Multivector a) { return a *= -1.0; }
  friend bool operator==(const Multivector&, const Multivector&) = default;

 private:
  Coeffs c_{};
  Signature sig_{};
};

// All binary operations throw std::invalid_argument on signature mismatch.
Multivector geometric_product(const Multivector& a, const Multivector& b);
Multivector operator*(const Multivector& a, const Multivector& b);

// Outer product: grade(result) = grade(a) + grade(b) per blade pair.
Multivector wedge(const Multivector& a, const Multivector& b);
// Symmetric ("fat dot") inner product: grade(result) = |grade(a) - grade(b)|
// per blade pair. For two vectors this is the metric scalar product.
Multivector inner(const Multivector& a, const Multivector& b);
// Flips the sign of grades 2 and 3.
Multivector reverse(const Multivector& a);
// Flips the sign of odd grades.
Multivector involute(const Multivector& a);
// Throws std::invalid_argument unless 0 <= grade <= 4.
Multivector grade_project(const Multivector& a, int grade);

double scalar_part(const Multivector& a);
// Largest absolute coefficient difference.
double max_abs_diff(const Multivector& a, const Multivector& b);

}  // namespace rfsplat::ga
