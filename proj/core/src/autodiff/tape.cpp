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

#include "rfsplat/autodiff/tape.hpp"

#include <stdexcept>
#include <string>

#include "rfsplat/errors.hpp"

namespace rfsplat::ad {

Tensor::Tensor(int r, int c, std::vector<double> values) : rows(r), cols(c), data(std::move(values)) {
  if (data.size() != static_cast<std::size_t>(r) * static_cast<std::size_t>(c)) {
    throw std::invalid_argument("tensor data size does not match shape");
  }
}

double Tensor::item() const {
  if (rows != 1 || cols != 1) throw std::invalid_argument("item() needs a 1x1 tensor");
  return data[0];
}

void Tape::check(Var v) const {
  if (v.id < 0 || static_cast<std::size_t>(v.id) >= nodes_.size()) {
    throw StateError("variable is not recorded on this tape");
  }
}

Var Tape::constant(Tensor value) {
  Node n;
  n.value = std::move(value);
  nodes_.push_back(std::move(n));
  return Var{static_cast<int>(nodes_.size()) - 1};
}

Var Tape::leaf(Tensor value) {
  Node n;
  n.value = std::move(value);
  n.requires_grad = true;
  nodes_.push_back(std::move(n));
  return Var{static_cast<int>(nodes_.size()) - 1};
}

Var Tape::record(Tensor value, std::span<const Var> inputs, Backward backward) {
  Node n;
  n.value = std::move(value);
  for (Var in : inputs) {
    check(in);
    n.requires_grad = n.requires_grad || nodes_[static_cast<std::size_t>(in.id)].requires_grad;
  }
  if (n.requires_grad) n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return Var{static_cast<int>(nodes_.size()) - 1};
}

const Tensor& Tape::value(Var v) const {
  check(v);
  return nodes_[static_cast<std::size_t>(v.id)].value;
}

bool Tape::requires_grad(Var v) const {
  check(v);
  return nodes_[static_cast<std::size_t>(v.id)].requires_grad;
}

Tensor& Tape::grad_buffer(Var v) {
  check(v);
  Node& n = nodes_[static_cast<std::size_t>(v.id)];
  if (!n.has_grad) {
    n.grad = Tensor(n.value.rows, n.value.cols, 0.0);
    n.has_grad = true;
  }
  return n.grad;
}

const Tensor* Tape::upstream(Var v) const {
  check(v);
  const Node& n = nodes_[static_cast<std::size_t>(v.id)];
  return n.has_grad ? &n.grad : nullptr;
}

Tensor Tape::grad(Var v) const {
  if (!backward_done_) throw StateError("gradients requested before backward()");
  check(v);
  const Node& n = nodes_[static_cast<std::size_t>(v.id)];
  if (n.has_grad) return n.grad;
  return Tensor(n.value.rows, n.value.cols, 0.0);
}

void Tape::backward(Var output) {
  check(output);
  const Tensor& v = value(output);
  if (v.rows != 1 || v.cols != 1) {
    throw std::invalid_argument("backward(output) needs a scalar output; pass a seed instead");
  }
  backward(output, Tensor::scalar(1.0));
}

void Tape::backward(Var output, const Tensor& seed) {
  if (nodes_.empty()) throw StateError("backward() on an empty tape");
  if (backward_done_) throw StateError("backward() already ran on this tape");
  check(output);
  if (!seed.same_shape(value(output))) throw std::invalid_argument("seed shape mismatch");
  backward_done_ = true;
  Tensor& g = grad_buffer(output);
  for (std::size_t i = 0; i < g.data.size(); ++i) g.data[i] += seed.data[i];
  for (int i = output.id; i >= 0; --i) {
    Node& n = nodes_[static_cast<std::size_t>(i)];
    if (n.has_grad && n.backward) n.backward(*this, n.grad);
  }
}

std::vector<Tensor> gradients(Tape& tape, Var loss, std::span<const Var> params) {
  tape.backward(loss);
  std::vector<Tensor> out;
  out.reserve(params.size());
  for (Var p : params) out.push_back(tape.grad(p));
  return out;
}

}  // namespace rfsplat::ad
