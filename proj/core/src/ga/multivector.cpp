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

#include "rfsplat/ga/multivector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace rfsplat::ga {
namespace {

constexpr std::array<unsigned, kBladeCount> kMasks = {
    0b0000,                          // 1
    0b0001, 0b0010, 0b0100, 0b1000,  // e1 e2 e3 e4
    0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100,  // e12 e13 e14 e23 e24 e34
    0b0111, 0b1011, 0b1101, 0b1110,  // e123 e124 e134 e234
    0b1111,                          // e1234
};

constexpr std::array<std::string_view, kBladeCount> kNames = {
    "1",   "e1",   "e2",   "e3",   "e4",   "e12",  "e13",  "e14",
    "e23", "e24",  "e34",  "e123", "e124", "e134", "e234", "e1234",
};

// Sign from sorting the concatenated basis-vector list of blades a and b
// into canonical order.
int reorder_sign(unsigned a, unsigned b) {
  int swaps = 0;
  a >>= 1;
  while (a != 0) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

CayleyTable build_table(const Signature& sig) {
  CayleyTable t;
  t.signature = sig;
  for (int i = 0; i < kBladeCount; ++i) {
    for (int j = 0; j < kBladeCount; ++j) {
      const unsigned a = kMasks[i];
      const unsigned b = kMasks[j];
      int sign = reorder_sign(a, b);
      const unsigned common = a & b;
      for (int k = 0; k < 4; ++k) {
        if (common & (1u << k)) sign *= sig.metric(k);
      }
      t.index[i][j] = static_cast<std::int8_t>(blade_from_mask(a ^ b));
      t.sign[i][j] = static_cast<std::int8_t>(sign);
    }
  }
  return t;
}

void require_same(const Multivector& a, const Multivector& b) {
  if (!(a.signature() == b.signature())) {
    throw std::invalid_argument("multivector signature mismatch: " + to_string(a.signature()) +
                                " vs " + to_string(b.signature()));
  }
}

template <typename Keep>
Multivector filtered_product(const Multivector& a, const Multivector& b, Keep keep) {
  require_same(a, b);
  const CayleyTable& t = cayley_table(a.signature());
  Multivector out(a.signature());
  for (int i = 0; i < kBladeCount; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < kBladeCount; ++j) {
      if (t.sign[i][j] == 0 || !keep(blade_grade(i), blade_grade(j), blade_grade(t.index[i][j]))) {
        continue;
      }
      out[t.index[i][j]] += t.sign[i][j] * a[i] * b[j];
    }
  }
  return out;
}

}  // namespace

Signature::Signature(int positive, int negative, int null) : p(positive), q(negative), r(null) {
  if (p < 0 || q < 0 || r < 0 || p + q + r != 4) {
    throw std::invalid_argument("signature must satisfy p+q+r = 4 with non-negative counts, got " +
                                to_string(*this));
  }
}

int Signature::metric(int basis_index) const {
  if (basis_index < p) return 1;
  if (basis_index < p + q) return -1;
  return 0;
}

std::string to_string(const Signature& sig) {
  return "(" + std::to_string(sig.p) + "," + std::to_string(sig.q) + "," + std::to_string(sig.r) +
         ")";
}

int blade_grade(int blade) { return std::popcount(kMasks.at(blade)); }
unsigned blade_mask(int blade) { return kMasks.at(blade); }

int blade_from_mask(unsigned mask) {
  for (int i = 0; i < kBladeCount; ++i) {
    if (kMasks[i] == mask) return i;
  }
  throw std::invalid_argument("no blade for mask " + std::to_string(mask));
}

std::string_view blade_name(int blade) { return kNames.at(blade); }
bool blade_has_e4(int blade) { return (kMasks.at(blade) & 0b1000u) != 0; }

const CayleyTable& cayley_table(const Signature& sig) {
  // Index p*5 + q covers every valid signature; r is implied.
  static const std::array<CayleyTable, 25> tables = [] {
    std::array<CayleyTable, 25> all{};
    for (int p = 0; p <= 4; ++p) {
      for (int q = 0; p + q <= 4; ++q) all[p * 5 + q] = build_table(Signature(p, q, 4 - p - q));
    }
    return all;
  }();
  return tables[sig.p * 5 + sig.q];
}

void geometric_product(std::span<const double, kBladeCount> a,
                       std::span<const double, kBladeCount> b,
                       std::span<double, kBladeCount> out, const CayleyTable& table) {
  std::fill(out.begin(), out.end(), 0.0);
  for (int i = 0; i < kBladeCount; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    const auto& idx = table.index[i];
    const auto& sgn = table.sign[i];
    for (int j = 0; j < kBladeCount; ++j) out[idx[j]] += sgn[j] * ai * b[j];
  }
}

Multivector Multivector::scalar(double value, const Signature& sig) {
  Multivector m(sig);
  m.c_[kScalar] = value;
  return m;
}

Multivector Multivector::blade(int index, double coeff, const Signature& sig) {
  if (index < 0 || index >= kBladeCount) throw std::invalid_argument("blade index out of range");
  Multivector m(sig);
  m.c_[index] = coeff;
  return m;
}

Multivector Multivector::vector(double x, double y, double z, double w, const Signature& sig) {
  Multivector m(sig);
  m.c_[kE1] = x;
  m.c_[kE2] = y;
  m.c_[kE3] = z;
  m.c_[kE4] = w;
  return m;
}

Multivector Multivector::vector(const Eigen::Vector3d& v, const Signature& sig) {
  return vector(v.x(), v.y(), v.z(), 0.0, sig);
}

Multivector& Multivector::operator+=(const Multivector& o) {
  require_same(*this, o);
  for (int i = 0; i < kBladeCount; ++i) c_[i] += o.c_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  require_same(*this, o);
  for (int i = 0; i < kBladeCount; ++i) c_[i] -= o.c_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Multivector geometric_product(const Multivector& a, const Multivector& b) {
  require_same(a, b);
  Multivector out(a.signature());
  geometric_product(a.coeffs(), b.coeffs(), out.coeffs(), cayley_table(a.signature()));
  return out;
}

Multivector operator*(const Multivector& a, const Multivector& b) { return geometric_product(a, b); }

Multivector wedge(const Multivector& a, const Multivector& b) {
  return filtered_product(a, b, [](int ga, int gb, int gr) { return gr == ga + gb; });
}

Multivector inner(const Multivector& a, const Multivector& b) {
  return filtered_product(a, b, [](int ga, int gb, int gr) { return gr == std::abs(ga - gb); });
}

Multivector reverse(const Multivector& a) {
  Multivector out = a;
  for (int i = 0; i < kBladeCount; ++i) {
    const int g = blade_grade(i);
    if (g == 2 || g == 3) out[i] = -out[i];
  }
  return out;
}

Multivector involute(const Multivector& a) {
  Multivector out = a;
  for (int i = 0; i < kBladeCount; ++i) {
    if (blade_grade(i) % 2 == 1) out[i] = -out[i];
  }
  return out;
}

Multivector grade_project(const Multivector& a, int grade) {
  if (grade < 0 || grade > kMaxGrade) {
    throw std::invalid_argument("grade must be in 0..4, got " + std::to_string(grade));
  }
  Multivector out(a.signature());
  for (int i = 0; i < kBladeCount; ++i) {
    if (blade_grade(i) == grade) out[i] = a[i];
  }
  return out;
}

double scalar_part(const Multivector& a) { return a[kScalar]; }

double max_abs_diff(const Multivector& a, const Multivector& b) {
  double m = 0.0;
  for (int i = 0; i < kBladeCount; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace rfsplat::ga
