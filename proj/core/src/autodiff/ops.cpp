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

#include "rfsplat/autodiff/ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rfsplat::ad {
namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

template <typename F>
void if_grad(Tape& t, Var v, F&& f) {
  if (t.requires_grad(v)) f(t.grad_buffer(v));
}

double sigm(double x) { return 1.0 / (1.0 + std::exp(-x)); }

template <typename Fwd, typename Deriv>
Var unary(Tape& t, Var a, Fwd fwd, Deriv deriv) {
  const Tensor& x = t.value(a);
  Tensor y(x.rows, x.cols);
  for (std::size_t i = 0; i < x.data.size(); ++i) y.data[i] = fwd(x.data[i]);
  const Var in[] = {a};
  return t.record(std::move(y), in, [a, deriv](Tape& t, const Tensor& g) {
    if_grad(t, a, [&](Tensor& ga) {
      const Tensor& x = t.value(a);
      for (std::size_t i = 0; i < x.data.size(); ++i) ga.data[i] += g.data[i] * deriv(x.data[i]);
    });
  });
}

}  // namespace

Var matmul(Tape& t, Var a, Var b) {
  const Tensor& A = t.value(a);
  const Tensor& B = t.value(b);
  require(A.cols == B.rows, "matmul: inner dimensions differ");
  Tensor y(A.rows, B.cols);
  y.map().noalias() = A.map() * B.map();
  const Var in[] = {a, b};
  return t.record(std::move(y), in, [a, b](Tape& t, const Tensor& g) {
    if_grad(t, a, [&](Tensor& ga) { ga.map().noalias() += g.map() * t.value(b).map().transpose(); });
    if_grad(t, b, [&](Tensor& gb) { gb.map().noalias() += t.value(a).map().transpose() * g.map(); });
  });
}

Var add(Tape& t, Var a, Var b) {
  const Tensor& A = t.value(a);
  const Tensor& B = t.value(b);
  require(A.same_shape(B), "add: shape mismatch");
  Tensor y = A;
  for (std::size_t i = 0; i < y.data.size(); ++i) y.data[i] += B.data[i];
  const Var in[] = {a, b};
  return t.record(std::move(y), in, [a, b](Tape& t, const Tensor& g) {
    if_grad(t, a, [&](Tensor& ga) { ga.map() += g.map(); });
    if_grad(t, b, [&](Tensor& gb) { gb.map() += g.map(); });
  });
}

Var sub(Tape& t, Var a, Var b) {
  const Tensor& A = t.value(a);
  const Tensor& B = t.value(b);
  require(A.same_shape(B), "sub: shape mismatch");
  Tensor y = A;
  for (std::size_t i = 0; i < y.data.size(); ++i) y.data[i] -= B.data[i];
  const Var in[] = {a, b};
  return t.record(std::move(y), in, [a, b](Tape& t, const Tensor& g) {
    if_grad(t, a, [&](Tensor& ga) { ga.map() += g.map(); });
    if_grad(t, b, [&](Tensor& gb) { gb.map() -= g.map(); });
  });
}

Var mul(Tape& t, Var a, Var b) {
  const Tensor& A = t.value(a);
  const Tensor& B = t.value(b);
  require(A.same_shape(B), "mul: shape mismatch");
  Tensor y = A;
  for (std::size_t i = 0; i < y.data.size(); ++i) y.data[i] *= B.data[i];
  const Var in[] = {a, b};
  return t.record(std::move(y), in, [a, b](Tape& t, const Tensor& g) {
    if_grad(t, a, [&](Tensor& ga) { ga.map().array() += g.map().array() * t.value(b).map().array(); });
    if_grad(t, b, [&](Tensor& gb) { gb.map().array() += g.map().array() * t.value(a).map().array(); });
  });
}

Var add_row(Tape& t, Var a, Var row) {
  const Tensor& A = t.value(a);
  const Tensor& R = t.value(row);
  require(R.rows == 1 && R.cols == A.cols, "add_row: row must be 1 x cols");
  Tensor y = A;
  y.map().rowwise() += R.map().row(0);
  const Var in[] = {a, row};
  return t.record(std::move(y), in, [a, row](Tape& t, const Tensor& g) {
    if_grad(t, a, [&](Tensor& ga) { ga.map() += g.map(); });
    if_grad(t, row, [&](Tensor& gr) { gr.map().row(0) += g.map().colwise().sum(); });
  });
}

Var linear(Tape& t, Var x, Var weight, Var bias) {
  const Tensor& X = t.value(x);
  const Tensor& W = t.value(weight);
  const Tensor& B = t.value(bias);
  require(X.cols == W.rows, "linear: input width does not match weight rows");
  require(B.rows == 1 && B.cols == W.cols, "linear: bias must be 1 x out");
  Tensor y(X.rows, W.cols);
  y.map().noalias() = X.map() * W.map();
  y.map().rowwise() += B.map().row(0);
  const Var in[] = {x, weight, bias};
  return t.record(std::move(y), in, [x, weight, bias](Tape& t, const Tensor& g) {
    if_grad(t, x, [&](Tensor& gx) { gx.map().noalias() += g.map() * t.value(weight).map().transpose(); });
    if_grad(t, weight, [&](Tensor& gw) { gw.map().noalias() += t.value(x).map().transpose() * g.map(); });
    if_grad(t, bias, [&](Tensor& gb) { gb.map().row(0) += g.map().colwise().sum(); });
  });
}

Var scale(Tape& t, Var a, double s) {
  return unary(t, a, [s](double x) { return s * x; }, [s](double) { return s; });
}

Var add_scalar(Tape& t, Var a, double s) {
  return unary(t, a, [s](double x) { return x + s; }, [](double) { return 1.0; });
}

Var sigmoid(Tape& t, Var a) {
  return unary(t, a, sigm, [](double x) {
    const double s = sigm(x);
    return s * (1.0 - s);
  });
}

Var tanh(Tape& t, Var a) {
  return unary(t, a, [](double x) { return std::tanh(x); }, [](double x) {
    const double th = std::tanh(x);
    return 1.0 - th * th;
  });
}

Var silu(Tape& t, Var a) {
  return unary(t, a, [](double x) { return x * sigm(x); }, [](double x) {
    const double s = sigm(x);
    return s * (1.0 + x * (1.0 - s));
  });
}

Var exp(Tape& t, Var a) {
  return unary(t, a, [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); });
}

Var square(Tape& t, Var a) {
  return unary(t, a, [](double x) { return x * x; }, [](double x) { return 2.0 * x; });
}

Var clamp(Tape& t, Var a, double lo, double hi) {
  return unary(
      t, a, [lo, hi](double x) { return std::clamp(x, lo, hi); },
      [lo, hi](double x) { return (x > lo && x < hi) ? 1.0 : 0.0; });
}

Var sum(Tape& t, Var a) {
  const Tensor& A = t.value(a);
  double s = 0.0;
  for (double v : A.data) s += v;
  const Var in[] = {a};
  return t.record(Tensor::scalar(s), in, [a](Tape& t, const Tensor& g) {
    if_grad(t, a, [&](Tensor& ga) {
      for (double& v : ga.data) v += g.data[0];
    });
  });
}

Var mean(Tape& t, Var a) {
  const int n = t.value(a).size();
  require(n > 0, "mean of an empty tensor");
  return scale(t, sum(t, a), 1.0 / n);
}

Var mean_abs_diff(Tape& t, Var a, Var b) {
  const Tensor& A = t.value(a);
  const Tensor& B = t.value(b);
  require(A.same_shape(B), "mean_abs_diff: shape mismatch");
  require(A.size() > 0, "mean_abs_diff of empty tensors");
  double s = 0.0;
  for (std::size_t i = 0; i < A.data.size(); ++i) s += std::abs(A.data[i] - B.data[i]);
  const double inv_n = 1.0 / A.size();
  const Var in[] = {a, b};
  return t.record(Tensor::scalar(s * inv_n), in, [a, b, inv_n](Tape& t, const Tensor& g) {
    const Tensor& A = t.value(a);
    const Tensor& B = t.value(b);
    const double gs = g.data[0] * inv_n;
    auto sgn = [](double d) { return d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0); };
    if_grad(t, a, [&](Tensor& ga) {
      for (std::size_t i = 0; i < A.data.size(); ++i) ga.data[i] += gs * sgn(A.data[i] - B.data[i]);
    });
    if_grad(t, b, [&](Tensor& gb) {
      for (std::size_t i = 0; i < A.data.size(); ++i) gb.data[i] -= gs * sgn(A.data[i] - B.data[i]);
    });
  });
}

Var softmax_rows(Tape& t, Var a) {
  const Tensor& A = t.value(a);
  Tensor y(A.rows, A.cols);
  for (int r = 0; r < A.rows; ++r) {
    double m = -INFINITY;
    for (int c = 0; c < A.cols; ++c) m = std::max(m, A(r, c));
    double z = 0.0;
    for (int c = 0; c < A.cols; ++c) z += (y(r, c) = std::exp(A(r, c) - m));
    for (int c = 0; c < A.cols; ++c) y(r, c) /= z;
  }
  const Var self = t.next_var();
  const Var in[] = {a};
  return t.record(std::move(y), in, [a, self](Tape& t, const Tensor& g) {
    if_grad(t, a, [&](Tensor& ga) {
      const Tensor& Y = t.value(self);
      for (int r = 0; r < Y.rows; ++r) {
        double dot = 0.0;
        for (int c = 0; c < Y.cols; ++c) dot += g(r, c) * Y(r, c);
        for (int c = 0; c < Y.cols; ++c) ga(r, c) += Y(r, c) * (g(r, c) - dot);
      }
    });
  });
}

Var normalize_rows(Tape& t, Var a) {
  const Tensor& A = t.value(a);
  Tensor y = A;
  for (int r = 0; r < A.rows; ++r) {
    double n2 = 0.0;
    for (int c = 0; c < A.cols; ++c) n2 += A(r, c) * A(r, c);
    if (!(n2 > 0.0)) throw std::domain_error("normalize_rows: zero row");
    const double inv = 1.0 / std::sqrt(n2);
    for (int c = 0; c < A.cols; ++c) y(r, c) *= inv;
  }
  const Var in[] = {a};
  return t.record(std::move(y), in, [a](Tape& t, const Tensor& g) {
    if_grad(t, a, [&](Tensor& ga) {
      const Tensor& A = t.value(a);
      for (int r = 0; r < A.rows; ++r) {
        double n2 = 0.0, dot = 0.0;
        for (int c = 0; c < A.cols; ++c) n2 += A(r, c) * A(r, c);
        const double n = std::sqrt(n2);
        for (int c = 0; c < A.cols; ++c) dot += g(r, c) * A(r, c) / n;
        for (int c = 0; c < A.cols; ++c) ga(r, c) += (g(r, c) - dot * A(r, c) / n) / n;
      }
    });
  });
}

Var concat_cols(Tape& t, std::span<const Var> parts) {
  require(!parts.empty(), "concat_cols: no inputs");
  const int rows = t.value(parts[0]).rows;
  int cols = 0;
  for (Var p : parts) {
    require(t.value(p).rows == rows, "concat_cols: row counts differ");
    cols += t.value(p).cols;
  }
  Tensor y(rows, cols);
  int off = 0;
  for (Var p : parts) {
    const Tensor& P = t.value(p);
    y.map().middleCols(off, P.cols) = P.map();
    off += P.cols;
  }
  std::vector<Var> ins(parts.begin(), parts.end());
  return t.record(std::move(y), parts, [ins](Tape& t, const Tensor& g) {
    int off = 0;
    for (Var p : ins) {
      const int c = t.value(p).cols;
      if_grad(t, p, [&](Tensor& gp) { gp.map() += g.map().middleCols(off, c); });
      off += c;
    }
  });
}

Var slice_cols(Tape& t, Var a, int start, int count) {
  const Tensor& A = t.value(a);
  require(start >= 0 && count >= 0 && start + count <= A.cols, "slice_cols: out of range");
  Tensor y(A.rows, count);
  y.map() = A.map().middleCols(start, count);
  const Var in[] = {a};
  return t.record(std::move(y), in, [a, start, count](Tape& t, const Tensor& g) {
    if_grad(t, a, [&](Tensor& ga) { ga.map().middleCols(start, count) += g.map(); });
  });
}

Var gather_rows(Tape& t, Var a, std::span<const int> rows) {
  const Tensor& A = t.value(a);
  Tensor y(static_cast<int>(rows.size()), A.cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i] >= 0 && rows[i] < A.rows, "gather_rows: index out of range");
    y.map().row(static_cast<int>(i)) = A.map().row(rows[i]);
  }
  std::vector<int> idx(rows.begin(), rows.end());
  const Var in[] = {a};
  return t.record(std::move(y), in, [a, idx](Tape& t, const Tensor& g) {
    if_grad(t, a, [&](Tensor& ga) {
      for (std::size_t i = 0; i < idx.size(); ++i) ga.map().row(idx[i]) += g.map().row(static_cast<int>(i));
    });
  });
}

Var broadcast_rows(Tape& t, Var row, int n) {
  const Tensor& R = t.value(row);
  require(R.rows == 1, "broadcast_rows: input must be a single row");
  require(n >= 0, "broadcast_rows: negative count");
  Tensor y(n, R.cols);
  for (int r = 0; r < n; ++r) y.map().row(r) = R.map().row(0);
  const Var in[] = {row};
  return t.record(std::move(y), in, [row](Tape& t, const Tensor& g) {
    if_grad(t, row, [&](Tensor& gr) { gr.map().row(0) += g.map().colwise().sum(); });
  });
}

Var reshape(Tape& t, Var a, int rows, int cols) {
  const Tensor& A = t.value(a);
  require(rows * cols == A.size(), "reshape: element count changes");
  Tensor y(rows, cols, A.data);
  const Var in[] = {a};
  return t.record(std::move(y), in, [a](Tape& t, const Tensor& g) {
    if_grad(t, a, [&](Tensor& ga) {
      for (std::size_t i = 0; i < g.data.size(); ++i) ga.data[i] += g.data[i];
    });
  });
}

Var transpose(Tape& t, Var a) {
  const Tensor& A = t.value(a);
  Tensor y(A.cols, A.rows);
  y.map() = A.map().transpose();
  const Var in[] = {a};
  return t.record(std::move(y), in, [a](Tape& t, const Tensor& g) {
    if_grad(t, a, [&](Tensor& ga) { ga.map() += g.map().transpose(); });
  });
}

Var concat_rows(Tape& t, std::span<const Var> parts) {
  require(!parts.empty(), "concat_rows: no inputs");
  const int cols = t.value(parts[0]).cols;
  int rows = 0;
  for (Var p : parts) {
    require(t.value(p).cols == cols, "concat_rows: column counts differ");
    rows += t.value(p).rows;
  }
  Tensor y(rows, cols);
  int off = 0;
  for (Var p : parts) {
    const Tensor& P = t.value(p);
    y.map().middleRows(off, P.rows) = P.map();
    off += P.rows;
  }
  std::vector<Var> ins(parts.begin(), parts.end());
  return t.record(std::move(y), parts, [ins](Tape& t, const Tensor& g) {
    int off = 0;
    for (Var p : ins) {
      const int r = t.value(p).rows;
      if_grad(t, p, [&](Tensor& gp) { gp.map() += g.map().middleRows(off, r); });
      off += r;
    }
  });
}

}  // namespace rfsplat::ad
