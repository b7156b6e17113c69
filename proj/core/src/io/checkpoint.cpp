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


#include "rfsplat/io/checkpoint.hpp"

#include <cmath>

#include "rfsplat/errors.hpp"
#include "rfsplat/io/dataset.hpp"

namespace rfsplat::io {

using nlohmann::json;

namespace {

constexpr const char* kCheckpointFormat = "rfsplat-checkpoint";
constexpr const char* kRunLogFormat = "rfsplat-run-log";

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& c) {
  json params = json::array();
  const auto& p = c.model.params;
  for (int s = 0; s < p.size(); ++s) {
    for (double v : p[s].data) {
      if (!std::isfinite(v)) throw std::invalid_argument("parameter " + p.name(s) + " is not finite");
    }
    params.push_back({{"name", p.name(s)}, {"rows", p[s].rows}, {"cols", p[s].cols}, {"data", p[s].data}});
  }
  json j = {
      {"format", kCheckpointFormat},
      {"version", kFormatVersion},
      {"model", to_json(c.model.config)},
      {"target", to_json(c.target)},
      {"tx", {c.model.tx.x(), c.model.tx.y(), c.model.tx.z()}},
      {"primitives", c.model.primitives()},
      {"step", c.step},
      {"params", std::move(params)},
  };
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump() << "\n";
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  try {
    if (!j.is_object() || j.value("format", std::string()) != kCheckpointFormat) {
      throw FormatError(path.string() + ": not an rfsplat checkpoint");
    }
    const int version = j.at("version").get<int>();
    if (version > kFormatVersion) {
      throw FormatError(path.string() + ": checkpoint version " + std::to_string(version) +
                        " is newer than supported version " + std::to_string(kFormatVersion));
    }
    Checkpoint c;
    const auto cfg = model_config_from_json(j.at("model"));
    c.target = target_from_json(j.at("target"));
    c.step = j.value("step", std::int64_t{0});
    const auto tx = j.at("tx").get<std::vector<double>>();
    if (tx.size() != 3) throw FormatError(path.string() + ": tx needs three coordinates");
    ad::ParameterSet saved;
    for (const auto& e : j.at("params")) {
      const int rows = e.at("rows").get<int>(), cols = e.at("cols").get<int>();
      auto data = e.at("data").get<std::vector<double>>();
      if (rows < 0 || cols < 0 || data.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw FormatError(path.string() + ": tensor " + e.at("name").get<std::string>() + " has a bad shape");
      }
      saved.add(e.at("name").get<std::string>(), ad::Tensor(rows, cols, std::move(data)));
    }
    c.model = train::Model::restore(cfg, {tx[0], tx[1], tx[2]}, j.at("primitives").get<int>(), saved);
    return c;
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

RunLog::RunLog(const std::filesystem::path& path, const json& meta) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  out_.open(path, std::ios::trunc);
  if (!out_) throw std::runtime_error("cannot write " + path.string());
  write({{"format", kRunLogFormat}, {"version", kFormatVersion}, {"meta", meta}});
}

void RunLog::write(const json& record) {
  out_ << record.dump() << "\n";
  out_.flush();
}

void RunLog::step(const train::StepRecord& r) {
  write({{"step", r.step}, {"epoch", r.epoch}, {"loss", r.loss}, {"dynamic_range", r.dynamic_range}});
}

std::vector<json> read_run_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<json> out;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ": " + e.what(), n);
    }
  }
  if (!out.empty()) {
    const auto& head = out.front();
    if (head.value("format", std::string()) != kRunLogFormat) throw FormatError(path.string() + ": not a run log");
    if (head.value("version", 0) > kFormatVersion) {
      throw FormatError(path.string() + ": run log version is newer than supported");
    }
  }
  return out;
}

}  // namespace rfsplat::io
