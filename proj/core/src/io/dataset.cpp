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


#include "rfsplat/io/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "rfsplat/errors.hpp"
#include "rfsplat/train/trainer.hpp"

namespace rfsplat::io {

using nlohmann::json;

std::vector<int> DatasetManifest::indices(Split which) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < split.size(); ++i) {
    if (split[i] == which) out.push_back(static_cast<int>(i));
  }
  return out;
}

namespace {

constexpr const char* kRssiColumns[] = {"x", "y", "z", "band", "rssi1", "rssi2", "rssi3", "rssi4", "rssi5"};

double median5(std::array<double, 5> v) {
  std::sort(v.begin(), v.end());
  return v[2];
}

Eigen::Vector3d parse_vec3(const std::string& text, int line) {
  const auto f = detail::split_csv(text);
  if (f.size() != 3) throw ParseError("expected three comma-separated numbers", line);
  return {detail::parse_double(f[0], line), detail::parse_double(f[1], line), detail::parse_double(f[2], line)};
}

// Reads comment directives and the header row; returns the header fields or
// nothing for a file without any data.
struct CsvPreamble {
  std::optional<std::vector<std::string>> header;
  std::optional<Eigen::Vector3d> tx;
  int line = 0;
};

CsvPreamble read_preamble(std::istream& in, const std::string& name) {
  CsvPreamble p;
  std::string text;
  while (std::getline(in, text)) {
    ++p.line;
    const auto s = detail::trim(text);
    if (s.empty()) continue;
    if (s.front() == '#') {
      const auto body = detail::trim(s.substr(1));
      if (body.rfind("version:", 0) == 0) {
        const int v = static_cast<int>(detail::parse_double(detail::trim(body.substr(8)), p.line));
        if (v > kFormatVersion) {
          throw FormatError(name + ": format version " + std::to_string(v) + " is newer than supported version " +
                            std::to_string(kFormatVersion));
        }
      } else if (body.rfind("tx:", 0) == 0) {
        p.tx = parse_vec3(detail::trim(body.substr(3)), p.line);
      }
      continue;
    }
    auto fields = detail::split_csv(s);
    for (auto& f : fields) {
      std::transform(f.begin(), f.end(), f.begin(), [](unsigned char c) { return std::tolower(c); });
    }
    if (fields.size() < 4 || fields[0] != "x" || fields[1] != "y" || fields[2] != "z" || fields[3] != "band") {
      throw FormatError(name + ": missing header row starting with x,y,z,band");
    }
    p.header = std::move(fields);
    return p;
  }
  return p;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

DatasetManifest load_rssi_dataset(const std::filesystem::path& path, const std::optional<std::string>& band) {
  auto in = open_input(path);
  DatasetManifest m;
  m.band_filter = band;
  const auto pre = read_preamble(in, path.string());
  if (pre.tx) m.tx = *pre.tx;
  if (!pre.header) {
    m.warnings.push_back(path.string() + ": no records");
    return m;
  }
  if (!std::equal(pre.header->begin(), pre.header->end(), std::begin(kRssiColumns), std::end(kRssiColumns))) {
    throw FormatError(path.string() + ": expected header x,y,z,band,rssi1,rssi2,rssi3,rssi4,rssi5");
  }
  int line = pre.line, excluded = 0;
  std::string text;
  while (std::getline(in, text)) {
    ++line;
    const auto s = detail::trim(text);
    if (s.empty() || s.front() == '#') continue;
    const auto f = detail::split_csv(s);
    if (f.size() != 9) throw ParseError("expected 9 fields, got " + std::to_string(f.size()), line);
    MeasurementRecord r;
    r.position = {detail::parse_double(f[0], line), detail::parse_double(f[1], line), detail::parse_double(f[2], line)};
    r.band = f[3];
    std::array<double, 5> samples{};
    bool silent = true;
    for (int k = 0; k < 5; ++k) {
      samples[static_cast<std::size_t>(k)] = detail::parse_double(f[static_cast<std::size_t>(4 + k)], line);
      silent = silent && samples[static_cast<std::size_t>(k)] == kNoSignalDbm;
    }
    if (band && r.band != *band) continue;
    if (silent) {
      ++excluded;
      continue;
    }
    r.rssi_dbm = median5(samples);
    m.records.push_back(std::move(r));
  }
  if (excluded > 0) {
    m.warnings.push_back(path.string() + ": excluded " + std::to_string(excluded) + " records at -100 dBm");
  }
  if (m.records.empty()) m.warnings.push_back(path.string() + ": no records");
  return m;
}

void save_rssi_dataset(const std::filesystem::path& path, const DatasetManifest& m) {
  auto out = open_output(path);
  out << "# version: " << kFormatVersion << "\n";
  out << "# tx: " << detail::format_double(m.tx.x()) << "," << detail::format_double(m.tx.y()) << ","
      << detail::format_double(m.tx.z()) << "\n";
  out << "x,y,z,band,rssi1,rssi2,rssi3,rssi4,rssi5\n";
  for (const auto& r : m.records) {
    if (!r.valid || !r.rssi_dbm) continue;
    out << detail::format_double(r.position.x()) << "," << detail::format_double(r.position.y()) << ","
        << detail::format_double(r.position.z()) << "," << r.band;
    // One reading repeated so the median reproduces it.
    for (int k = 0; k < 5; ++k) out << "," << detail::format_double(*r.rssi_dbm);
    out << "\n";
  }
}

signal::AngularSpectrum read_spectrum_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  constexpr int kRows = signal::AngularSpectrum::kAzimuthBins, kCols = signal::AngularSpectrum::kElevationBins;
  std::vector<double> values;
  values.reserve(signal::AngularSpectrum::kCells);
  int rows = 0, line = 0;
  std::size_t cols = 0;
  std::string text;
  while (std::getline(in, text)) {
    ++line;
    const auto s = detail::trim(text);
    if (s.empty() || s.front() == '#') continue;
    const auto f = detail::split_csv(s);
    if (rows > 0 && f.size() != cols) {
      throw FormatError(path.string() + ": ragged rows, expected " + std::to_string(kRows) + "x" +
                        std::to_string(kCols));
    }
    cols = f.size();
    for (const auto& v : f) values.push_back(detail::parse_double(v, line));
    ++rows;
  }
  if (rows != kRows || cols != static_cast<std::size_t>(kCols)) {
    throw FormatError(path.string() + ": spectrum is " + std::to_string(rows) + "x" + std::to_string(cols) +
                      ", expected " + std::to_string(kRows) + "x" + std::to_string(kCols));
  }
  try {
    return signal::AngularSpectrum(std::move(values));
  } catch (const std::invalid_argument& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_spectrum_csv(const std::filesystem::path& path, const signal::AngularSpectrum& s) {
  auto out = open_output(path);
  std::string row;
  for (int a = 0; a < signal::AngularSpectrum::kAzimuthBins; ++a) {
    row.clear();
    for (int e = 0; e < signal::AngularSpectrum::kElevationBins; ++e) {
      if (e > 0) row += ',';
      row += detail::format_double(s.at(a, e));
    }
    out << row << '\n';
  }
}

DatasetManifest load_spectrum_dataset(const std::filesystem::path& manifest) {
  auto in = open_input(manifest);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(manifest.string() + ": " + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "rfsplat-spectrum-dataset") {
      throw FormatError(manifest.string() + ": not a spectrum dataset manifest");
    }
    const int version = j.at("version").get<int>();
    if (version > kFormatVersion) {
      throw FormatError(manifest.string() + ": format version " + std::to_string(version) +
                        " is newer than supported version " + std::to_string(kFormatVersion));
    }
    DatasetManifest m;
    const auto tx = j.at("tx").get<std::vector<double>>();
    if (tx.size() != 3) throw FormatError(manifest.string() + ": tx needs three coordinates");
    m.tx = {tx[0], tx[1], tx[2]};
    const auto base = manifest.parent_path();
    for (const auto& r : j.at("records")) {
      MeasurementRecord rec;
      const auto p = r.at("position").get<std::vector<double>>();
      if (p.size() != 3) throw FormatError(manifest.string() + ": position needs three coordinates");
      rec.position = {p[0], p[1], p[2]};
      if (r.contains("orientation")) {
        const auto q = r.at("orientation").get<std::vector<double>>();
        if (q.size() != 4) throw FormatError(manifest.string() + ": orientation needs four components");
        rec.orientation = Eigen::Vector4d(q[0], q[1], q[2], q[3]);
      }
      rec.band = r.value("band", std::string());
      if (r.contains("rssi_dbm")) rec.rssi_dbm = r.at("rssi_dbm").get<double>();
      if (r.contains("spectrum")) rec.spectrum = read_spectrum_csv(base / r.at("spectrum").get<std::string>());
      if (!rec.position.allFinite()) throw FormatError(manifest.string() + ": non-finite position");
      m.records.push_back(std::move(rec));
    }
    if (j.contains("split")) {
      m.split_seed = j["split"].at("seed").get<std::uint64_t>();
      for (const auto& s : j["split"].at("assignment")) {
        m.split.push_back(s.get<std::string>() == "test" ? Split::kTest : Split::kTrain);
      }
      if (m.split.size() != m.records.size()) throw FormatError(manifest.string() + ": split size mismatch");
    }
    if (m.records.empty()) m.warnings.push_back(manifest.string() + ": no records");
    return m;
  } catch (const json::exception& e) {
    throw FormatError(manifest.string() + ": " + e.what());
  }
}

void save_spectrum_dataset(const std::filesystem::path& manifest, const DatasetManifest& m) {
  json j;
  j["format"] = "rfsplat-spectrum-dataset";
  j["version"] = kFormatVersion;
  j["tx"] = {m.tx.x(), m.tx.y(), m.tx.z()};
  j["records"] = json::array();
  const auto base = manifest.parent_path();
  for (std::size_t i = 0; i < m.records.size(); ++i) {
    const auto& r = m.records[i];
    json e;
    e["position"] = {r.position.x(), r.position.y(), r.position.z()};
    if (r.orientation) e["orientation"] = {(*r.orientation)[0], (*r.orientation)[1], (*r.orientation)[2], (*r.orientation)[3]};
    e["band"] = r.band;
    if (r.rssi_dbm) e["rssi_dbm"] = *r.rssi_dbm;
    if (r.spectrum) {
      char name[32];
      std::snprintf(name, sizeof name, "spectra/%05zu.csv", i);
      write_spectrum_csv(base / name, *r.spectrum);
      e["spectrum"] = name;
    }
    j["records"].push_back(std::move(e));
  }
  if (!m.split.empty()) {
    json a = json::array();
    for (auto s : m.split) a.push_back(s == Split::kTest ? "test" : "train");
    j["split"] = {{"seed", m.split_seed}, {"assignment", std::move(a)}};
  }
  auto out = open_output(manifest);
  out << j.dump(1) << "\n";
}

std::vector<Eigen::Vector3d> load_point_cloud(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<Eigen::Vector3d> pts;
  std::string text;
  int line = 0;
  bool header = false;
  while (std::getline(in, text)) {
    ++line;
    const auto s = detail::trim(text);
    if (s.empty() || s.front() == '#') continue;
    const auto f = detail::split_csv(s);
    if (!header) {
      if (f.size() != 3 || f[0] != "x" || f[1] != "y" || f[2] != "z") {
        throw FormatError(path.string() + ": missing header row x,y,z");
      }
      header = true;
      continue;
    }
    if (f.size() != 3) throw ParseError("expected 3 fields, got " + std::to_string(f.size()), line);
    pts.emplace_back(detail::parse_double(f[0], line), detail::parse_double(f[1], line),
                     detail::parse_double(f[2], line));
  }
  return pts;
}

void save_point_cloud(const std::filesystem::path& path, const std::vector<Eigen::Vector3d>& points) {
  auto out = open_output(path);
  out << "# version: " << kFormatVersion << "\nx,y,z\n";
  for (const auto& p : points) {
    out << detail::format_double(p.x()) << "," << detail::format_double(p.y()) << "," << detail::format_double(p.z())
        << "\n";
  }
}

void assign_split(DatasetManifest& m, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction >= 0.0 && train_fraction <= 1.0)) {
    throw std::invalid_argument("train fraction must lie in [0, 1]");
  }
  std::vector<int> valid;
  for (std::size_t i = 0; i < m.records.size(); ++i) {
    if (m.records[i].valid) valid.push_back(static_cast<int>(i));
  }
  const auto order = train::shuffled_indices(static_cast<int>(valid.size()), seed);
  const auto n_train = static_cast<std::size_t>(std::ceil(train_fraction * static_cast<double>(valid.size()) - 1e-9));
  m.split.assign(m.records.size(), Split::kTest);
  for (std::size_t k = 0; k < n_train; ++k) m.split[static_cast<std::size_t>(valid[static_cast<std::size_t>(order[k])])] = Split::kTrain;
  m.split_seed = seed;
}

GatewayDataset load_gateway_dataset(const std::filesystem::path& path) {
  auto in = open_input(path);
  GatewayDataset d;
  const auto pre = read_preamble(in, path.string());
  if (!pre.header) {
    d.warnings.push_back(path.string() + ": no records");
    return d;
  }
  const std::size_t width = pre.header->size();
  if (width < 5) throw FormatError(path.string() + ": expected at least one gateway column after x,y,z,band");
  std::vector<std::vector<double>> rows;
  int line = pre.line;
  std::string text;
  while (std::getline(in, text)) {
    ++line;
    const auto s = detail::trim(text);
    if (s.empty() || s.front() == '#') continue;
    const auto f = detail::split_csv(s);
    if (f.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " fields, got " + std::to_string(f.size()), line);
    }
    d.positions.emplace_back(detail::parse_double(f[0], line), detail::parse_double(f[1], line),
                             detail::parse_double(f[2], line));
    d.bands.push_back(f[3]);
    std::vector<double> g;
    for (std::size_t k = 4; k < width; ++k) g.push_back(detail::parse_double(f[k], line));
    rows.push_back(std::move(g));
  }
  d.rssi.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width - 4));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      d.rssi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
    }
  }
  if (rows.empty()) d.warnings.push_back(path.string() + ": no records");
  return d;
}

DatasetManifest GatewayDataset::gateway(int g, const Eigen::Vector3d& tx) const {
  if (g < 0 || g >= gateways()) throw std::out_of_range("gateway index out of range");
  DatasetManifest m;
  m.tx = tx;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const double v = rssi(static_cast<Eigen::Index>(i), g);
    if (v == kNoSignalDbm) continue;
    MeasurementRecord r;
    r.position = positions[i];
    r.band = bands[i];
    r.rssi_dbm = v;
    m.records.push_back(std::move(r));
  }
  return m;
}

}  // namespace rfsplat::io
