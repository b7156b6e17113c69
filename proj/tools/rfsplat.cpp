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


// rfsplat command-line tool: synth, train, render, eval, plot.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rfsplat/errors.hpp"
#include "rfsplat/io/checkpoint.hpp"
#include "rfsplat/io/config.hpp"
#include "rfsplat/io/dataset.hpp"
#include "rfsplat/io/heatmap.hpp"
#include "rfsplat/io/metrics.hpp"
#include "rfsplat/scene/scene.hpp"
#include "rfsplat/train/synth.hpp"
#include "rfsplat/train/trainer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rfsplat;

namespace {

json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(p.string() + ": " + e.what());
  }
}

void write_json(const fs::path& p, const json& j) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << j.dump(2) << "\n";
}

// Settings shared by train, render and eval: a JSON file with optional
// "model", "train", "target", "scene" and "split" sections.
struct RunConfig {
  train::ModelConfig model;
  train::TrainConfig train;
  std::optional<io::TargetSpec> target;
  scene::SceneDefaults scene;
  double train_fraction = 0.7;
};

RunConfig load_run_config(const std::string& path) {
  RunConfig c;
  if (path.empty()) return c;
  const json j = read_json(path);
  if (!j.is_object()) throw FormatError(path + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    if (k == "model") {
      c.model = io::model_config_from_json(v);
    } else if (k == "train") {
      c.train = io::train_config_from_json(v);
    } else if (k == "target") {
      c.target = io::target_from_json(v);
    } else if (k == "scene") {
      for (const auto& [sk, sv] : v.items()) {
        if (sk == "opacity") c.scene.opacity = sv.get<double>();
        else if (sk == "min_scale") c.scene.min_scale = sv.get<double>();
        else if (sk == "max_scale") c.scene.max_scale = sv.get<double>();
        else throw FormatError("unknown key '" + sk + "' in scene");
      }
    } else if (k == "split") {
      for (const auto& [sk, sv] : v.items()) {
        if (sk == "train_fraction") c.train_fraction = sv.get<double>();
        else throw FormatError("unknown key '" + sk + "' in split");
      }
    } else {
      throw FormatError("unknown section '" + k + "' in " + path);
    }
  }
  return c;
}

render::ReceiverPose parse_pose(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad pose component '" + item + "'");
    }
  }
  if (v.size() != 3 && v.size() != 7) throw std::invalid_argument("pose needs x,y,z or x,y,z,qw,qx,qy,qz");
  render::ReceiverPose p;
  p.position = {v[0], v[1], v[2]};
  if (v.size() == 7) p.orientation = Eigen::Vector4d(v[3], v[4], v[5], v[6]).normalized();
  return p;
}

render::ReceiverPose pose_of(const io::MeasurementRecord& r) {
  render::ReceiverPose p;
  p.position = r.position;
  if (r.orientation) p.orientation = r.orientation->normalized();
  return p;
}

ad::Tensor spectrum_tensor(const signal::AngularSpectrum& s) {
  return ad::Tensor(signal::AngularSpectrum::kAzimuthBins, signal::AngularSpectrum::kElevationBins,
                    std::vector<double>(s.values().begin(), s.values().end()));
}

signal::AngularSpectrum to_spectrum(const ad::Tensor& t) {
  std::vector<double> v = t.data;
  for (double& x : v) x = std::max(x, 0.0);
  return signal::AngularSpectrum(std::move(v));
}

// Spectrum records use spectrum targets unless the config says otherwise.
io::TargetSpec pick_target(const RunConfig& cfg, const io::DatasetManifest& m, const std::string& flag) {
  io::TargetSpec t = cfg.target.value_or(io::TargetSpec{});
  if (!flag.empty()) {
    t.kind = io::observation_from_string(flag);
  } else if (!cfg.target) {
    const bool spectra = !m.records.empty() && m.records.front().spectrum.has_value();
    t.kind = spectra ? train::Observation::kSpectrum : train::Observation::kRssi;
  }
  if (t.kind == train::Observation::kPlane) throw std::invalid_argument("datasets hold spectra or RSSI, not planes");
  return t;
}

ad::Tensor observation(const io::MeasurementRecord& r, train::Observation kind) {
  if (kind == train::Observation::kSpectrum) {
    if (!r.spectrum) throw FormatError("record without a spectrum in a spectrum run");
    return spectrum_tensor(*r.spectrum);
  }
  if (!r.rssi_dbm) throw FormatError("record without RSSI in an RSSI run");
  return ad::Tensor::scalar(*r.rssi_dbm);
}

io::DatasetManifest load_dataset(const fs::path& p) {
  auto m = p.extension() == ".csv" ? io::load_rssi_dataset(p) : io::load_spectrum_dataset(p);
  for (const auto& w : m.warnings) std::cerr << "warning: " << w << "\n";
  return m;
}

std::vector<int> split_indices(io::DatasetManifest& m, const std::string& which, double fraction,
                               std::uint64_t seed) {
  if (which == "all") {
    std::vector<int> all;
    for (std::size_t i = 0; i < m.records.size(); ++i) {
      if (m.records[i].valid) all.push_back(static_cast<int>(i));
    }
    return all;
  }
  if (m.split.empty()) io::assign_split(m, fraction, seed);
  if (which == "train") return m.indices(io::Split::kTrain);
  if (which == "test") return m.indices(io::Split::kTest);
  throw std::invalid_argument("split must be train, test or all");
}

// --- synth ---------------------------------------------------------------

struct SynthArgs {
  std::string spec, out;
  std::optional<std::uint64_t> seed;
};

int run_synth(const SynthArgs& a) {
  json j = read_json(a.spec);
  if (a.seed && j.contains("random_rx")) j["random_rx"]["seed"] = *a.seed;
  const auto spec = io::synth_spec_from_json(j);
  const auto ds = train::synth_generate(spec);
  const fs::path out = a.out;
  io::DatasetManifest m;
  m.tx = spec.tx;
  for (const auto& meas : ds.measurements) {
    io::MeasurementRecord r;
    r.position = meas.rx;
    r.band = "synthetic";
    r.rssi_dbm = meas.rssi_db;
    r.spectrum = meas.spectrum;
    m.records.push_back(std::move(r));
  }
  io::save_spectrum_dataset(out / "manifest.json", m);
  io::save_rssi_dataset(out / "rssi.csv", m);
  io::save_point_cloud(out / "points.csv", ds.points);
  write_json(out / "scene_spec.json", io::to_json(spec));
  std::cout << "wrote " << m.records.size() << " measurements and " << ds.points.size() << " points to "
            << out.string() << "\n";
  return 0;
}

// --- train ---------------------------------------------------------------

struct TrainArgs {
  std::string data, config, out, points, target, split = "train";
  std::optional<std::uint64_t> seed;
  std::optional<int> epochs, batch, anchors;
  std::optional<std::int64_t> steps;
  std::optional<double> lr, beta;
  bool quiet = false;
};

int run_train(const TrainArgs& a) {
  RunConfig cfg = load_run_config(a.config);
  if (a.seed) cfg.train.seed = *a.seed;
  if (a.epochs) cfg.train.epochs = *a.epochs;
  if (a.batch) cfg.train.batch = *a.batch;
  if (a.steps) cfg.train.max_steps = *a.steps;
  if (a.lr) cfg.train.adam.lr = *a.lr;
  if (a.beta) cfg.train.loss.beta = *a.beta;
  if (a.anchors) cfg.model.anchors = *a.anchors;
  cfg.model.sync();

  auto m = load_dataset(a.data);
  const auto target = pick_target(cfg, m, a.target);
  const fs::path points_path = a.points.empty() ? fs::path(a.data).parent_path() / "points.csv" : fs::path(a.points);
  const auto points = io::load_point_cloud(points_path);
  scene::SceneDefaults defaults = cfg.scene;
  defaults.sh_degree = cfg.model.sh_degree;
  defaults.anchor_count = cfg.model.anchors;
  const auto init = scene::init_from_point_cloud(points, defaults, m.tx);

  const auto idx = split_indices(m, a.split, cfg.train_fraction, cfg.train.seed);
  if (idx.empty()) throw std::invalid_argument("no training records in the selected split");
  std::vector<train::Sample> samples;
  for (int i : idx) {
    const auto& r = m.records[static_cast<std::size_t>(i)];
    samples.push_back({pose_of(r), observation(r, target.kind)});
  }

  auto model = train::Model::create(init, cfg.model, cfg.train.seed);
  const fs::path out = a.out;
  cfg.train.dump_path = (out / "divergence.json").string();
  io::RunLog log(out / "log.jsonl", {{"data", a.data},
                                     {"records", samples.size()},
                                     {"primitives", model.primitives()},
                                     {"model", io::to_json(cfg.model)},
                                     {"train", io::to_json(cfg.train)},
                                     {"target", io::to_json(target)}});
  const auto rt = target.make();
  const auto res = train::train(model, rt, samples, cfg.train, [&](const train::StepRecord& r) {
    log.step(r);
    if (!a.quiet && (r.step == 0 || (r.step + 1) % 100 == 0)) {
      std::printf("step %lld  epoch %d  loss %.6g\n", static_cast<long long>(r.step), r.epoch, r.loss);
      std::fflush(stdout);
    }
  });
  for (std::size_t e = 0; e < res.epoch_loss.size(); ++e) {
    log.write({{"epoch", e}, {"mean_loss", res.epoch_loss[e]}});
  }
  const auto steps = static_cast<std::int64_t>(res.steps.size());
  io::save_checkpoint(out / "checkpoint.json", {model, target, steps});
  std::cout << "trained " << steps << " steps on " << samples.size() << " records; checkpoint "
            << (out / "checkpoint.json").string() << "\n";
  return 0;
}

// --- render --------------------------------------------------------------

struct RenderArgs {
  std::string checkpoint, pose, out;
};

int run_render(const RenderArgs& a) {
  const auto ck = io::load_checkpoint(a.checkpoint);
  const render::ReceiverPose pose = parse_pose(a.pose);
  const auto pred = train::predict(ck.model, ck.target.make(), std::span(&pose, 1)).front();
  const fs::path out = a.out;
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  switch (ck.target.kind) {
    case train::Observation::kSpectrum: {
      io::write_spectrum_csv(out.string() + ".csv", to_spectrum(pred));
      io::HeatmapOptions opt;
      opt.spectrum_layout = true;
      io::write_png(out.string() + ".png", io::heatmap(pred, opt));
      std::cout << "wrote " << out.string() << ".csv and .png\n";
      break;
    }
    case train::Observation::kRssi:
      write_json(out.string() + ".json", {{"rssi_db", pred.item()}, {"position", {pose.position.x(), pose.position.y(), pose.position.z()}}});
      std::cout << "rssi " << pred.item() << " dB\n";
      break;
    case train::Observation::kPlane: {
      io::HeatmapOptions opt;
      io::write_png(out.string() + ".png", io::heatmap(pred, opt));
      std::cout << "wrote " << out.string() << ".png\n";
      break;
    }
  }
  return 0;
}

// --- eval ----------------------------------------------------------------

struct EvalArgs {
  std::string checkpoint, pred, data, out, split = "test";
  std::uint64_t seed = 42;
  double fraction = 0.7;
  std::string kind;
};

json report_json(const io::SpectrumReport& r) {
  return {{"kind", "spectrum"},
          {"count", r.ssim.size()},
          {"mean_ssim", r.mean_ssim},
          {"median_mae", r.median_mae},
          {"ssim", r.ssim},
          {"cdf", {{"values", r.cdf.values}, {"quantiles", r.cdf.quantiles}}}};
}

json report_json(const io::RssiReport& r) {
  return {{"kind", "rssi"},
          {"count", r.errors_db.size()},
          {"median_mae_db", r.median_mae_db},
          {"mean_mae_db", r.mean_mae_db},
          {"errors_db", r.errors_db}};
}

int run_eval(const EvalArgs& a) {
  if (a.checkpoint.empty() == a.pred.empty()) throw std::invalid_argument("eval needs exactly one of --checkpoint or --pred");
  auto gt = load_dataset(a.data);
  const auto idx = split_indices(gt, a.split, a.fraction, a.seed);
  if (idx.empty()) throw std::invalid_argument("no records in the selected split");

  train::Observation kind;
  std::vector<ad::Tensor> pred, truth;
  if (!a.checkpoint.empty()) {
    const auto ck = io::load_checkpoint(a.checkpoint);
    kind = ck.target.kind;
    std::vector<render::ReceiverPose> poses;
    for (int i : idx) poses.push_back(pose_of(gt.records[static_cast<std::size_t>(i)]));
    pred = train::predict(ck.model, ck.target.make(), poses);
  } else {
    const auto other = load_dataset(a.pred);
    if (other.records.size() != gt.records.size()) throw std::invalid_argument("prediction and ground-truth datasets differ in size");
    kind = a.kind.empty() ? (gt.records.front().spectrum ? train::Observation::kSpectrum : train::Observation::kRssi)
                          : io::observation_from_string(a.kind);
    for (int i : idx) pred.push_back(observation(other.records[static_cast<std::size_t>(i)], kind));
  }
  for (int i : idx) truth.push_back(observation(gt.records[static_cast<std::size_t>(i)], kind));

  json report;
  if (kind == train::Observation::kSpectrum) {
    const auto r = io::spectrum_metrics(pred, truth);
    report = report_json(r);
    std::cout << "mean SSIM " << r.mean_ssim << " over " << r.ssim.size() << " spectra\n";
  } else {
    std::vector<double> p, t;
    for (std::size_t k = 0; k < pred.size(); ++k) {
      p.push_back(pred[k].item());
      t.push_back(truth[k].item());
    }
    const auto r = io::rssi_metrics(p, t);
    report = report_json(r);
    std::cout << "median MAE " << r.median_mae_db << " dB over " << r.errors_db.size() << " receivers\n";
  }
  report["split"] = a.split;
  if (!a.out.empty()) write_json(a.out, report);
  return 0;
}

// --- plot ----------------------------------------------------------------

struct PlotArgs {
  std::string report, log, spectrum, out;
};

int run_plot(const PlotArgs& a) {
  if (a.report.empty() && a.log.empty() && a.spectrum.empty()) {
    throw std::invalid_argument("plot needs --report, --log or --spectrum");
  }
  const fs::path out = a.out;
  fs::create_directories(out);
  if (!a.report.empty()) {
    const json r = read_json(a.report);
    if (r.value("kind", std::string()) == "spectrum") {
      io::Cdf c;
      c.values = r.at("cdf").at("values").get<std::vector<double>>();
      c.quantiles = r.at("cdf").at("quantiles").get<std::vector<double>>();
      io::write_png(out / "ssim_cdf.png", io::cdf_plot(c));
    } else {
      auto errors = r.at("errors_db").get<std::vector<double>>();
      const auto c = io::empirical_cdf(errors);
      const double top = c.values.empty() ? 1.0 : std::max(c.values.back(), 1e-12);
      io::Cdf scaled = c;
      for (double& v : scaled.values) v /= top;
      auto img = io::cdf_plot(scaled);
      img.text["x_axis"] = "abs error 0.." + std::to_string(top) + " dB";
      io::write_png(out / "error_cdf.png", img);
    }
  }
  if (!a.log.empty()) {
    std::vector<double> loss;
    for (const auto& line : io::read_run_log(a.log)) {
      if (line.contains("step") && line.contains("loss")) loss.push_back(line["loss"].get<double>());
    }
    io::write_png(out / "loss.png", io::series_plot(loss));
  }
  if (!a.spectrum.empty()) {
    io::HeatmapOptions opt;
    opt.spectrum_layout = true;
    io::write_png(out / "spectrum.png", io::heatmap(spectrum_tensor(io::read_spectrum_csv(a.spectrum)), opt));
  }
  std::cout << "wrote plots to " << out.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rfsplat: radio-frequency Gaussian splatting"};
  app.require_subcommand(1);
  std::uint64_t seed = 42;
  bool seed_given = false;

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset from a scene spec");
  synth->add_option("--spec", sa.spec, "Scene spec JSON")->required()->check(CLI::ExistingFile);
  synth->add_option("--out", sa.out, "Output directory")->required();

  TrainArgs ta;
  auto* trn = app.add_subcommand("train", "Train a model on a dataset");
  trn->add_option("--data", ta.data, "Dataset manifest (.json) or RSSI CSV")->required()->check(CLI::ExistingFile);
  trn->add_option("--config", ta.config, "Run configuration JSON")->check(CLI::ExistingFile);
  trn->add_option("--out", ta.out, "Output directory for checkpoint and run log")->required();
  trn->add_option("--points", ta.points, "Point cloud CSV (default: points.csv next to the data)");
  trn->add_option("--target", ta.target, "spectrum or rssi")->check(CLI::IsMember({"spectrum", "rssi"}));
  trn->add_option("--split", ta.split, "train, test or all")->check(CLI::IsMember({"train", "test", "all"}));
  trn->add_option("--epochs", ta.epochs, "Epochs");
  trn->add_option("--steps", ta.steps, "Stop after this many steps");
  trn->add_option("--batch", ta.batch, "Measurements per step");
  trn->add_option("--lr", ta.lr, "Adam learning rate");
  trn->add_option("--beta", ta.beta, "MAE weight in the loss");
  trn->add_option("--anchors", ta.anchors, "Anchor tokens");
  trn->add_flag("--quiet", ta.quiet, "No progress lines");

  RenderArgs ra;
  auto* rnd = app.add_subcommand("render", "Render a checkpoint at a receiver pose");
  rnd->add_option("--checkpoint", ra.checkpoint, "Checkpoint JSON")->required()->check(CLI::ExistingFile);
  rnd->add_option("--pose", ra.pose, "x,y,z or x,y,z,qw,qx,qy,qz")->required();
  rnd->add_option("--out", ra.out, "Output path prefix")->required();

  EvalArgs ea;
  auto* evl = app.add_subcommand("eval", "Score a checkpoint (or a prediction dataset) against a dataset");
  evl->add_option("--checkpoint", ea.checkpoint, "Checkpoint JSON")->check(CLI::ExistingFile);
  evl->add_option("--pred", ea.pred, "Prediction dataset instead of a checkpoint")->check(CLI::ExistingFile);
  evl->add_option("--data", ea.data, "Ground-truth dataset")->required()->check(CLI::ExistingFile);
  evl->add_option("--split", ea.split, "train, test or all")->check(CLI::IsMember({"train", "test", "all"}));
  evl->add_option("--train-fraction", ea.fraction, "Training share when the dataset has no stored split");
  evl->add_option("--kind", ea.kind, "spectrum or rssi, with --pred")->check(CLI::IsMember({"spectrum", "rssi"}));
  evl->add_option("--out", ea.out, "Metrics report JSON");

  PlotArgs pa;
  auto* plt = app.add_subcommand("plot", "Draw CDF, loss and spectrum PNGs");
  plt->add_option("--report", pa.report, "Metrics report from eval")->check(CLI::ExistingFile);
  plt->add_option("--log", pa.log, "Run log from train")->check(CLI::ExistingFile);
  plt->add_option("--spectrum", pa.spectrum, "Spectrum CSV")->check(CLI::ExistingFile);
  plt->add_option("--out", pa.out, "Output directory")->required();

  for (auto* sub : {synth, trn, rnd, evl, plt}) {
    sub->add_option_function<std::uint64_t>("--seed", [&](std::uint64_t s) { seed = s; seed_given = true; },
                                            "Random seed (default 42)");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      if (seed_given) sa.seed = seed;
      return run_synth(sa);
    }
    if (trn->parsed()) {
      if (seed_given) ta.seed = seed;
      return run_train(ta);
    }
    if (rnd->parsed()) return run_render(ra);
    if (evl->parsed()) {
      ea.seed = seed;
      return run_eval(ea);
    }
    if (plt->parsed()) return run_plot(pa);
  } catch (const std::exception& e) {
    std::cerr << "rfsplat: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
