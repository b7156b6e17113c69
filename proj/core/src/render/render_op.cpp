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

#include "rfsplat/render/render_op.hpp"

#include <stdexcept>

#include "rfsplat/autodiff/dual.hpp"

namespace rfsplat::render {
namespace {

using D10 = ad::Dual<10>;

RenderPrimitives gather(const ad::Tape& tape, const RenderVars& vars, int sh_degree) {
  auto mat = [&](ad::Var v) {
    const ad::Tensor& t = tape.value(v);
    return scene::RowMatrix(t.map());
  };
  RenderPrimitives p;
  p.sh_degree = sh_degree;
  p.position = mat(vars.position);
  p.rotation = mat(vars.rotation);
  p.log_scale = mat(vars.log_scale);
  const scene::RowMatrix op = mat(vars.opacity);
  const scene::RowMatrix at = mat(vars.attenuation);
  if (op.cols() != 1 || at.cols() != 1) {
    throw std::invalid_argument("opacity and attenuation must be column vectors");
  }
  p.opacity = op.col(0);
  p.signal = mat(vars.signal);
  p.attenuation = at.col(0);
  p.validate();
  return p;
}

const SampleGrid& grid_of(const RenderSetup& setup) {
  if (!setup.grid) throw std::invalid_argument("render setup has no sample grid");
  return *setup.grid;
}

}  // namespace

PerceptionPlane render(const RenderPrimitives& prims, const RenderSetup& setup) {
  const SampleGrid& grid = grid_of(setup);
  const auto projected = project_all(prims, setup.receiver, setup.mercator);
  const auto tiles = tile_and_sort(projected, grid, setup.tile_size);
  return composite(tiles, projected, grid, setup.composite);
}

ad::Var render(ad::Tape& tape, const RenderVars& vars, const RenderSetup& setup) {
  const SampleGrid& grid = grid_of(setup);
  auto prims = std::make_shared<RenderPrimitives>(gather(tape, vars, setup.sh_degree));
  auto projected =
      std::make_shared<std::vector<ProjectedGaussian>>(project_all(*prims, setup.receiver, setup.mercator));
  auto tiles = std::make_shared<TileIndex>(tile_and_sort(*projected, grid, setup.tile_size));
  PerceptionPlane plane = composite(*tiles, *projected, grid, setup.composite);

  const ad::Var inputs[] = {vars.position, vars.rotation, vars.log_scale,
                            vars.opacity,  vars.signal,   vars.attenuation};
  return tape.record(
      ad::Tensor(plane.rows, plane.cols, std::move(plane.values)), inputs,
      [vars, setup, prims, projected, tiles](ad::Tape& t, const ad::Tensor& g) {
        const SampleGrid& grid = *setup.grid;
        const auto pg = composite_backward(*tiles, *projected, grid, g.data, setup.composite);
        const bool want_geom = t.requires_grad(vars.position) || t.requires_grad(vars.rotation) ||
                               t.requires_grad(vars.log_scale);
        const auto sig_cols = static_cast<std::size_t>(prims->signal.cols());
        const int nb = scene::sh_coefficient_count(prims->sh_degree);
        for (std::size_t k = 0; k < projected->size(); ++k) {
          const auto& pj = (*projected)[k];
          const auto& gr = pg[k];
          const int i = pj.index;
          if (t.requires_grad(vars.opacity)) {
            const double o = prims->opacity[i];
            if (o >= 0.0 && o <= 1.0) t.grad_buffer(vars.opacity)(i, 0) += gr.opacity;
          }
          if (t.requires_grad(vars.attenuation)) {
            t.grad_buffer(vars.attenuation)(i, 0) += gr.attenuation;
          }
          if (t.requires_grad(vars.signal) && gr.signal != 0.0) {
            const Eigen::Vector3d dir =
                (setup.receiver.position - prims->position.row(i).transpose()).normalized();
            std::array<double, 16> basis{};
            scene::sh_basis<double>(prims->sh_degree, dir.x(), dir.y(), dir.z(),
                                    std::span<double>(basis.data(), static_cast<std::size_t>(nb)));
            double re = 0.0, im = 0.0;
            for (int b = 0; b < nb; ++b) {
              re += basis[b] * prims->signal(i, 2 * b);
              im += basis[b] * prims->signal(i, 2 * b + 1);
            }
            const double s = std::sqrt(re * re + im * im + kSignalEps);
            ad::Tensor& gs = t.grad_buffer(vars.signal);
            for (int b = 0; b < nb; ++b) {
              gs(i, 2 * b) += gr.signal * re * basis[b] / s;
              gs(i, 2 * b + 1) += gr.signal * im * basis[b] / s;
            }
          }
          if (!want_geom) continue;
          std::array<D10, 3> pos;
          std::array<D10, 4> quat;
          std::array<D10, 3> ls;
          for (int a = 0; a < 3; ++a) pos[a] = D10::variable(prims->position(i, a), a);
          for (int a = 0; a < 4; ++a) quat[a] = D10::variable(prims->rotation(i, a), 3 + a);
          for (int a = 0; a < 3; ++a) ls[a] = D10::variable(prims->log_scale(i, a), 7 + a);
          const std::span<const double> sig(prims->signal.row(i).data(), sig_cols);
          const auto d = project_primitive<D10>(pos, quat, ls, sig, prims->sh_degree,
                                                setup.receiver, setup.mercator);
          double out[10];
          for (int a = 0; a < 10; ++a) {
            out[a] = gr.u * d.u.d[a] + gr.v * d.v.d[a] + gr.conic_a * d.conic_a.d[a] +
                     gr.conic_b * d.conic_b.d[a] + gr.conic_c * d.conic_c.d[a] +
                     gr.signal * d.signal.d[a];
          }
          if (t.requires_grad(vars.position)) {
            for (int a = 0; a < 3; ++a) t.grad_buffer(vars.position)(i, a) += out[a];
          }
          if (t.requires_grad(vars.rotation)) {
            for (int a = 0; a < 4; ++a) t.grad_buffer(vars.rotation)(i, a) += out[3 + a];
          }
          if (t.requires_grad(vars.log_scale)) {
            for (int a = 0; a < 3; ++a) t.grad_buffer(vars.log_scale)(i, a) += out[7 + a];
          }
        }
      });
}

}  // namespace rfsplat::render
