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

#include <string>

#include <nlohmann/json.hpp>

#include "rfsplat/train/model.hpp"
#include "rfsplat/train/synth.hpp"
#include "rfsplat/train/trainer.hpp"

namespace rfsplat::io {

// What a model renders. Serialized with checkpoints so `render` and `eval`
// rebuild the same target.
struct TargetSpec {
  train::Observation kind = train::Observation::kSpectrum;
  int width = 64;             // plane and RSSI targets
  int height = 32;
  double view_limit = 89.0;   // spectrum targets, degrees
  int tile_size = 16;

  train::RenderTarget make() const;
};

// The from_json readers start at `base` and override only the keys present;
// an unknown key throws FormatError naming it.
nlohmann::json to_json(const train::ModelConfig& c);
train::ModelConfig model_config_from_json(const nlohmann::json& j, train::ModelConfig base = {});

nlohmann::json to_json(const train::TrainConfig& c);
train::TrainConfig train_config_from_json(const nlohmann::json& j, train::TrainConfig base = {});

nlohmann::json to_json(const TargetSpec& t);
TargetSpec target_from_json(const nlohmann::json& j, TargetSpec base = {});

nlohmann::json to_json(const train::SyntheticSceneSpec& s);
train::SyntheticSceneSpec synth_spec_from_json(const nlohmann::json& j);

std::string to_string(train::Observation kind);
train::Observation observation_from_string(const std::string& s);

}  // namespace rfsplat::io
