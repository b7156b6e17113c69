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
#include <cmath>

namespace rfsplat::ad {

// Forward-mode dual number carrying N directional derivatives. Small and
// header-only; the renderer uses it to differentiate per-primitive geometry.
template <int N>
struct Dual {
  double v = 0.0;
  std::array<double, N> d{};

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: implicit promotion from constants

  static Dual variable(double value, int slot) {
    Dual x(value);
    x.d[slot] = 1.0;
    return x;
  }

  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (int i = 0; i < N; ++i) d[i] += o.d[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (int i = 0; i < N; ++i) d[i] -= o.d[i];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    for (int i = 0; i < N; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const double inv = 1.0 / o.v;
    for (int i = 0; i < N; ++i) d[i] = (d[i] - v * inv * o.d[i]) * inv;
    v *= inv;
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
  friend Dual operator+(Dual a, double b) { a.v += b; return a; }
  friend Dual operator+(double b, Dual a) { a.v += b; return a; }
  friend Dual operator-(Dual a, double b) { a.v -= b; return a; }
  friend Dual operator-(double b, const Dual& a) { return Dual(b) - a; }
  friend Dual operator*(Dual a, double b) {
    a.v *= b;
    for (double& x : a.d) x *= b;
    return a;
  }
  friend Dual operator*(double b, Dual a) { return a * b; }
  friend Dual operator/(Dual a, double b) { return a * (1.0 / b); }
  friend Dual operator/(double b, const Dual& a) { return Dual(b) / a; }
  friend Dual operator-(Dual a) {
    a.v = -a.v;
    for (double& x : a.d) x = -x;
    return a;
  }
  friend bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
  friend bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }
};

template <int N>
Dual<N> chain(const Dual<N>& x, double value, double derivative) {
  Dual<N> y(value);
  for (int i = 0; i < N; ++i) y.d[i] = derivative * x.d[i];
  return y;
}

template <int N>
Dual<N> sqrt(const Dual<N>& x) {
  const double s = std::sqrt(x.v);
  return chain(x, s, 0.5 / s);
}
template <int N>
Dual<N> exp(const Dual<N>& x) {
  const double e = std::exp(x.v);
  return chain(x, e, e);
}
template <int N>
Dual<N> log(const Dual<N>& x) {
  return chain(x, std::log(x.v), 1.0 / x.v);
}
template <int N>
Dual<N> sin(const Dual<N>& x) {
  return chain(x, std::sin(x.v), std::cos(x.v));
}
template <int N>
Dual<N> cos(const Dual<N>& x) {
  return chain(x, std::cos(x.v), -std::sin(x.v));
}
template <int N>
Dual<N> tan(const Dual<N>& x) {
  const double t = std::tan(x.v);
  return chain(x, t, 1.0 + t * t);
}
template <int N>
Dual<N> asinh(const Dual<N>& x) {
  return chain(x, std::asinh(x.v), 1.0 / std::sqrt(1.0 + x.v * x.v));
}
template <int N>
Dual<N> atan2(const Dual<N>& y, const Dual<N>& x) {
  const double r2 = x.v * x.v + y.v * y.v;
  Dual<N> out(std::atan2(y.v, x.v));
  for (int i = 0; i < N; ++i) out.d[i] = (x.v * y.d[i] - y.v * x.d[i]) / r2;
  return out;
}

inline double value_of(double x) { return x; }
template <int N>
double value_of(const Dual<N>& x) {
  return x.v;
}

}  // namespace rfsplat::ad
