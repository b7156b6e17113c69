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
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rfsplat/signal/signal.hpp"

namespace rfsplat::io {

inline constexpr int kFormatVersion = 1;

enum class Split : std::uint8_t { kTrain, kTest };

struct MeasurementRecord {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  std::optional<Eigen::Vector4d> orientation;  // w, x, y, z
  std::string band;
  std::optional<double> rssi_dbm;
  std::optional<signal::AngularSpectrum> spectrum;
  bool valid = true;
};

struct DatasetManifest {
  std::vector<MeasurementRecord> records;
  Eigen::Vector3d tx = Eigen::Vector3d::Zero();
  std::optional<std::string> band_filter;
  std::vector<Split> split;  // one entry per record, empty until assigned
  std::uint64_t split_seed = 0;
  std::vector<std::string> warnings;

  std::vector<int> indices(Split which) const;
};

// Samples at this level carry no signal.
inline constexpr double kNoSignalDbm = -100.0;

// CSV with a header row x,y,z,band,rssi1..rssi5. Lines starting with '#' are
// comments; "# version: N" and "# tx: x,y,z" are read. Each record keeps the
// median of its five samples; records whose samples all sit at -100 dBm are
// dropped. Throws FormatError for a missing header or a newer version and
// ParseError (with the line number) for a malformed row.
DatasetManifest load_rssi_dataset(const std::filesystem::path& path,
                                  const std::optional<std::string>& band = std::nullopt);
void save_rssi_dataset(const std::filesystem::path& path, const DatasetManifest& m);

// A JSON manifest listing poses, optional RSSI and one 360 x 90 CSV per
// record, relative to the manifest. Throws FormatError on a wrong shape.
DatasetManifest load_spectrum_dataset(const std::filesystem::path& manifest);
void save_spectrum_dataset(const std::filesystem::path& manifest, const DatasetManifest& m);

// Azimuth rows of 90 elevation values each.
signal::AngularSpectrum read_spectrum_csv(const std::filesystem::path& path);
void write_spectrum_csv(const std::filesystem::path& path, const signal::AngularSpectrum& s);

// CSV with an x,y,z header, one point per row.
std::vector<Eigen::Vector3d> load_point_cloud(const std::filesystem::path& path);
void save_point_cloud(const std::filesystem::path& path, const std::vector<Eigen::Vector3d>& points);

// Seeded shuffle of the valid records, the first ceil(train_fraction * n)
// going to training.
void assign_split(DatasetManifest& m, double train_fraction = 0.7, std::uint64_t seed = 42);

// Gateway-vector records: x,y,z,band,g1..gK with -100 marking a gateway that
// heard nothing. One model is trained per gateway.
struct GatewayDataset {
  std::vector<Eigen::Vector3d> positions;
  std::vector<std::string> bands;
  Eigen::MatrixXd rssi;  // records x gateways
  std::vector<std::string> warnings;

  int gateways() const { return static_cast<int>(rssi.cols()); }
  // Scalar manifest for one gateway without its silent records.
  DatasetManifest gateway(int g, const Eigen::Vector3d& tx) const;
};

GatewayDataset load_gateway_dataset(const std::filesystem::path& path);

}  // namespace rfsplat::io
