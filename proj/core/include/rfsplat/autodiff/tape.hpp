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

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace rfsplat::ad {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Dense row-major matrix of doubles.
struct Tensor {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Tensor() = default;
  Tensor(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), fill) {}
  Tensor(int r, int c, std::vector<double> values);

  static Tensor scalar(double v) { return Tensor(1, 1, v); }

  int size() const { return rows * cols; }
  double& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
  double item() const;

  Eigen::Map<RowMatrix> map() { return {data.data(), rows, cols}; }
  Eigen::Map<const RowMatrix> map() const { return {data.data(), rows, cols}; }

  bool same_shape(const Tensor& o) const { return rows == o.rows && cols == o.cols; }
  friend bool operator==(const Tensor&, const Tensor&) = default;
};

// Handle to a value recorded on a Tape.
struct Var {
  int id = -1;
  bool valid() const { return id >= 0; }
};

// Records a forward computation as a list of nodes and replays it in reverse
// to accumulate gradients. A tape is single use: record, then call backward
// once.
class Tape {
 public:
  // Receives the tape and the gradient flowing into the node's output.
  using Backward = std::function<void(Tape&, const Tensor&)>;

  // A value that never receives a gradient.
  Var constant(Tensor value);
  // A value whose gradient is wanted (parameters, inputs under test).
  Var leaf(Tensor value);

  const Tensor& value(Var v) const;
  // Gradient of the last backward() target with respect to v. Nodes the
  // target does not depend on report zeros. Throws StateError before
  // backward() has run.
  Tensor grad(Var v) const;
  bool requires_grad(Var v) const;

  // Seeds d(output)/d(output) = 1 for a 1x1 output and propagates. Throws
  // StateError when the tape is empty, the handle is foreign, or backward
  // already ran.
  void backward(Var output);
  // Same with an explicit upstream gradient of output's shape.
  void backward(Var output, const Tensor& seed);

  std::size_t size() const { return nodes_.size(); }
  // Handle the next recorded node will receive; lets a backward callback
  // read its own output value.
  Var next_var() const { return Var{static_cast<int>(nodes_.size())}; }

  // For op implementations: records a node produced from `inputs`. The
  // backward callback is dropped when no input requires a gradient.
  Var record(Tensor value, std::span<const Var> inputs, Backward backward);
  // Mutable gradient buffer of a node, allocated on first use.
  Tensor& grad_buffer(Var v);
  // Pointer to a node's gradient buffer if it has one, else nullptr.
  const Tensor* upstream(Var v) const;

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    bool requires_grad = false;
    bool has_grad = false;
    Backward backward;
  };

  void check(Var v) const;

  std::vector<Node> nodes_;
  bool backward_done_ = false;
};

// Runs backward from a scalar loss and returns one gradient per parameter,
// shaped like the parameter.
std::vector<Tensor> gradients(Tape& tape, Var loss, std::span<const Var> params);

}  // namespace rfsplat::ad
