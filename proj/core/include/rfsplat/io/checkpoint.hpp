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

#include <cstdint>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "rfsplat/io/config.hpp"
#include "rfsplat/train/model.hpp"

namespace rfsplat::io {

struct Checkpoint {
  train::Model model;
  TargetSpec target;
  std::int64_t step = 0;
};

// Versioned JSON container holding the configuration, the render target and
// every parameter tensor. Doubles are written in round-trip form so a reload
// reproduces the model bit for bit. Throws std::invalid_argument for
// non-finite parameters.
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& c);
// Throws FormatError for a foreign file, a newer version or a layout that does
// not match the stored configuration.
Checkpoint load_checkpoint(const std::filesystem::path& path);

// One JSON object per line, flushed after each record.
class RunLog {
 public:
  // Opens (truncating) the file and writes a header line with `meta`.
  RunLog(const std::filesystem::path& path, const nlohmann::json& meta);

  void write(const nlohmann::json& record);
  void step(const train::StepRecord& r);

 private:
  std::ofstream out_;
};

// Parses every line of a run log; throws ParseError on a malformed line.
std::vector<nlohmann::json> read_run_log(const std::filesystem::path& path);

}  // namespace rfsplat::io
