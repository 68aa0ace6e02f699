// Copyright 2026 The sigmap Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli/commands.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

#include "sigmap/image_io.h"
#include "sigmap/metrics.h"
#include "sigmap/report.h"
#include "sigmap/scenes.h"
#include "sigmap/smap_io.h"

namespace sigmap::cli {
namespace {

constexpr std::string_view kSynthHeader = "clean,noisy,truth,model,sigma_av,clipped";

void PrepareOutputDir(const fs::path& dir) {
  if (dir.empty()) throw UsageError("--out is required");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string());
  }
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

void AppendProvenance(std::ostringstream& out, const Provenance& provenance) {
  for (const auto& line : provenance.Lines()) out << "# " << line << '\n';
}

std::vector<std::string> Split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

struct SynthRow {
  fs::path clean;
  fs::path noisy;
  fs::path truth;
  std::string model;
  double sigma_av = 0.0;
  bool clipped = false;
};

// Relative paths in a synth manifest resolve against its directory.
std::vector<SynthRow> ReadSynthManifest(const fs::path& path) {
  if (path.empty()) throw UsageError("--manifest is required");
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  const fs::path base = path.parent_path();
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };
  std::vector<SynthRow> rows;
  std::string line;
  bool header = false;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != kSynthHeader) throw FormatError("not a synth manifest: " + path.string());
      header = true;
      continue;
    }
    const auto f = Split(line, ',');
    if (f.size() != 6) {
      throw FormatError(path.string() + ":" + std::to_string(number) + ": expected 6 fields");
    }
    SynthRow row;
    row.clean = resolve(f[0]);
    row.noisy = resolve(f[1]);
    row.truth = resolve(f[2]);
    row.model = f[3];
    try {
      row.sigma_av = std::stod(f[4]);
    } catch (const std::exception&) {
      throw FormatError(path.string() + ":" + std::to_string(number) + ": bad sigma_av");
    }
    row.clipped = f[5] == "1";
    rows.push_back(std::move(row));
  }
  if (!header) throw FormatError("not a synth manifest: " + path.string());
  return rows;
}

SigmaMap LoadTruth(const SynthRow& row) {
  if (!fs::exists(row.truth)) throw IoError("missing truth map " + row.truth.string());
  return LoadSigmaMap(row.truth);
}

// Resolved estimator: method names in evaluation order plus loaded weights.
struct Estimators {
  std::vector<std::string> methods;
  std::optional<EstimatorParams> params;
  DctBlockSpec dct;
  int tile = 256;

  SigmaMap Run(const std::string& method, const Raster& image, const SigmaMap* truth) const {
    if (method == "cnn") {
      EstimateOptions opts;
      opts.tile = tile;
      return Estimate(*params, image, opts);
    }
    if (method == "truth") return *truth;
    return LocalDctEstimate(image, dct);
  }
};

Estimators ResolveEstimators(const EstimatorChoice& choice, bool allow_truth) {
  Estimators e;
  e.dct = choice.dct;
  e.tile = choice.tile;
  if (!choice.checkpoint.empty()) {
    e.params = LoadCheckpoint(choice.checkpoint);
    e.methods.push_back("cnn");
  }
  for (const auto& b : choice.baselines) {
    if (b != "local_dct" && !(allow_truth && b == "truth")) {
      throw UsageError("unknown baseline '" + b + "'");
    }
    if (std::find(e.methods.begin(), e.methods.end(), b) == e.methods.end()) e.methods.push_back(b);
  }
  if (e.methods.empty()) throw UsageError("no estimator selected: give --checkpoint or --baseline");
  return e;
}

// Map-error and std-error reports share this loop.
void WriteAggregates(const EvalReport& report, std::ostream& log) {
  for (const auto& row : report.Aggregate()) {
    log << row.method << " " << report.LevelColumn() << "=" << FormatNumber(row.level)
        << " clipped=" << row.clipped << " n=" << row.n;
    if (row.error) log << " " << report.ErrorColumn() << "=" << FormatNumber(*row.error);
    if (row.psnr) log << " psnr=" << FormatNumber(*row.psnr);
    if (row.ssim) log << " ssim=" << FormatNumber(*row.ssim);
    if (row.below_threshold) log << " below_threshold=" << *row.below_threshold;
    log << '\n';
  }
}

std::string_view KindName(ReportKind kind) {
  switch (kind) {
    case ReportKind::kMapError:
      return "map_error";
    case ReportKind::kStdError:
      return "std_error";
    case ReportKind::kDenoise:
      return "denoise";
  }
  return "unknown";
}

}  // namespace

void RunMakeCorpus(const MakeCorpusOptions& o, const Provenance& provenance, std::ostream& log) {
  if (o.count < 1) throw UsageError("--count must be >= 1");
  if (o.width < 8 || o.height < 8) throw UsageError("--width and --height must be >= 8");
  if (o.channels != 1 && o.channels != 3) throw UsageError("--channels must be 1 or 3");
  if (o.flat > 255.0) throw UsageError("--flat must be in [0, 255]");
  PrepareOutputDir(o.out);
  const Prng base(provenance.seed);
  std::ostringstream manifest;
  AppendProvenance(manifest, provenance);
  for (int i = 0; i < o.count; ++i) {
    std::ostringstream name;
    name << (o.flat >= 0.0 ? "flat_" : "scene_") << std::setw(3) << std::setfill('0') << i << ".png";
    Prng rng = base.Split(static_cast<std::uint64_t>(i));
    const Raster image = o.flat >= 0.0 ? FlatImage(o.width, o.height, o.channels, o.flat)
                                       : GenerateScene(o.width, o.height, o.channels, rng);
    SaveRaster(image, o.out / name.str());
    manifest << name.str() << '\n';
  }
  WriteText(o.out / "manifest.txt", manifest.str());
  provenance.Write(o.out);
  log << "wrote " << o.count << " images to " << o.out.string() << '\n';
}

void RunSynth(const SynthOptions& o, const Provenance& provenance, std::ostream& log) {
  if (o.manifest.empty()) throw UsageError("--manifest is required");
  if (o.models.empty()) throw UsageError("--model list is empty");
  if (o.sigma_av.empty()) throw UsageError("--sigma-av list is empty");
  std::vector<std::optional<TestMapKind>> kinds;
  for (const auto& m : o.models) {
    if (m == "constant") {
      kinds.push_back(std::nullopt);
    } else if (auto kind = ParseTestMapKind(m)) {
      kinds.push_back(kind);
    } else {
      throw UsageError("unknown map model '" + m + "'");
    }
  }
  for (double s : o.sigma_av) {
    if (!(s > 0.0) || !std::isfinite(s)) throw UsageError("--sigma-av values must be positive");
  }
  const auto paths = ReadManifest(o.manifest);
  PrepareOutputDir(o.out);

  NoiseSpec spec;
  spec.clip = o.clip;
  const Prng base(provenance.seed);
  std::uint64_t stream = 0;
  std::set<std::string> stems;
  std::ostringstream csv;
  csv << kSynthHeader << '\n';
  int written = 0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const Raster clean = LoadRaster(paths[i]);
    if (clean.width() < kMinSynthSize || clean.height() < kMinSynthSize) {
      throw DimensionError("undersized image " + paths[i].string() + " (minimum " +
                           std::to_string(kMinSynthSize) + " px)");
    }
    std::string stem = paths[i].stem().string();
    if (!stems.insert(stem).second) stem += "_" + std::to_string(i);
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      for (double s : o.sigma_av) {
        Prng rng = base.Split(stream++);
        const SigmaMap map =
            kinds[k] ? ScaleMapToTarget(GenerateTestMap(*kinds[k], clean.width(), clean.height(), rng), s)
                     : ConstantMap(clean.width(), clean.height(), s);
        const Raster noisy = ApplyNoise(clean, map, spec, rng);
        const std::string name = stem + "_" + o.models[k] + "_s" + FormatNumber(s);
        SaveRaster(noisy, o.out / (name + ".pfm"));
        SaveSigmaMap(map, o.out / (name + ".smap"));
        csv << fs::absolute(paths[i]).lexically_normal().string() << ',' << name << ".pfm," << name
            << ".smap," << o.models[k] << ',' << FormatNumber(s) << ',' << (o.clip ? 1 : 0) << '\n';
        ++written;
      }
    }
  }
  AppendProvenance(csv, provenance);
  WriteText(o.out / "manifest.csv", csv.str());
  provenance.Write(o.out);
  log << "wrote " << written << " noisy images and maps to " << o.out.string() << '\n';
}

void RunTrain(const TrainCommandOptions& o, const Provenance& provenance, std::ostream& log) {
  if (o.manifest.empty()) throw UsageError("--manifest is required");
  if (o.downscale < 1) throw UsageError("--downscale must be >= 1");
  ValidateConfig(o.config);
  ValidateSchedule(o.schedule);
  const Corpus corpus = Corpus::FromManifest(o.manifest, o.downscale);
  if (corpus.empty()) throw UsageError("training manifest lists no images");
  corpus.RequireMinSize(o.pipeline.patch);
  std::optional<EstimatorParams> initial;
  if (!o.resume.empty()) initial = LoadCheckpoint(o.resume);
  PrepareOutputDir(o.out);

  NoiseSpec spec;
  spec.half_normal_scale = o.half_normal_scale;
  std::ostringstream losses;
  losses << "iteration,loss,lr\n";
  const int total = o.schedule.total_iterations;
  const int every = std::max(1, total / 20);
  TrainOptions topts;
  topts.pipeline = o.pipeline;
  topts.precision = o.double_precision ? Precision::kDouble : Precision::kFloat;
  topts.checkpoint_every = o.checkpoint_every;
  topts.on_iteration = [&](int it, double loss, double lr) {
    losses << it << ',' << FormatNumber(loss) << ',' << FormatNumber(lr) << '\n';
    if (it % every == 0 || it == total) log << "iteration " << it << " loss " << loss << '\n';
  };
  topts.on_checkpoint = [&](const EstimatorParams& p) {
    SaveCheckpoint(p, o.out / ("model_" + std::to_string(p.iteration()) + ".smck"));
  };
  // A resumed run draws from a stream keyed by its starting iteration.
  Prng rng = initial ? Prng(provenance.seed).Split(static_cast<std::uint64_t>(initial->iteration()))
                     : Prng(provenance.seed);
  const EstimatorParams params =
      Train(corpus, o.config, o.schedule, spec, rng, topts, initial ? &*initial : nullptr);
  SaveCheckpoint(params, o.out / "model.smck");
  AppendProvenance(losses, provenance);
  WriteText(o.out / "loss.csv", losses.str());
  provenance.Write(o.out);
  log << "wrote " << (o.out / "model.smck").string() << '\n';
}

void RunEstimate(const EstimateCommandOptions& o, const Provenance& provenance, std::ostream& log) {
  if (o.estimator.baselines.size() + (o.estimator.checkpoint.empty() ? 0 : 1) != 1) {
    throw UsageError("estimate takes exactly one of --checkpoint and --baseline");
  }
  const Estimators est = ResolveEstimators(o.estimator, false);
  if (o.inputs.empty()) throw UsageError("no input images");
  PrepareOutputDir(o.out);
  std::ostringstream csv;
  csv << "image,method,width,height,sigma_av,median_sigma\n";
  for (const auto& input : o.inputs) {
    const Raster image = LoadRaster(input);
    const SigmaMap map = est.Run(est.methods[0], image, nullptr);
    SaveSigmaMap(map, o.out / (input.stem().string() + ".smap"));
    csv << input.filename().string() << ',' << est.methods[0] << ',' << map.width() << ','
        << map.height() << ',' << FormatNumber(std::sqrt(map.MeanVariance())) << ','
        << FormatNumber(GlobalStdFromMap(map)) << '\n';
  }
  AppendProvenance(csv, provenance);
  WriteText(o.out / "estimates.csv", csv.str());
  provenance.Write(o.out);
  log << "estimated " << o.inputs.size() << " maps with " << est.methods[0] << '\n';
}

void RunEvaluate(const EvaluateOptions& o, const Provenance& provenance, std::ostream& log) {
  const Estimators est = ResolveEstimators(o.estimator, true);
  const auto rows = ReadSynthManifest(o.manifest);
  PrepareOutputDir(o.out);
  EvalReport report(o.awgn ? ReportKind::kStdError : ReportKind::kMapError);
  for (const auto& row : rows) {
    const SigmaMap truth = LoadTruth(row);
    const Raster noisy = LoadRaster(row.noisy);
    if (!SameShape(noisy, truth)) throw DimensionError("map/image shape mismatch for " + row.noisy.string());
    for (const auto& method : est.methods) {
      const SigmaMap map = est.Run(method, noisy, &truth);
      const double value = o.awgn ? GlobalStdFromMap(map) : RelativeMapError(map, truth);
      report.Add({row.noisy.filename().string(), method, row.sigma_av, row.clipped, value, {}, {}});
    }
  }
  report.WriteCsv(o.out / "report.csv", provenance.Lines());
  provenance.Write(o.out);
  WriteAggregates(report, log);
}

void RunDenoise(const DenoiseCommandOptions& o, const Provenance& provenance, std::ostream& log) {
  if (o.map_sources.empty()) throw UsageError("--map-source list is empty");
  std::optional<EstimatorParams> params;
  for (const auto& s : o.map_sources) {
    if (s == "estimated") {
      if (o.maps_dir.empty()) throw UsageError("map source 'estimated' needs --maps-dir");
    } else if (s == "cnn") {
      if (o.checkpoint.empty()) throw UsageError("map source 'cnn' needs --checkpoint");
      if (!params) params = LoadCheckpoint(o.checkpoint);
    } else if (s != "true" && s != "local_dct") {
      throw UsageError("unknown map source '" + s + "'");
    }
  }
  const auto rows = ReadSynthManifest(o.manifest);
  PrepareOutputDir(o.out);
  for (const auto& s : o.map_sources) PrepareOutputDir(o.out / s);

  EvalReport report(ReportKind::kDenoise);
  for (const auto& row : rows) {
    const Raster clean = LoadRaster(row.clean);
    const Raster noisy = LoadRaster(row.noisy);
    const std::string image = row.noisy.filename().string();
    report.Add({image, "noisy", row.sigma_av, row.clipped, {}, Psnr(clean, noisy), Ssim(clean, noisy)});
    for (const auto& s : o.map_sources) {
      SigmaMap map;
      if (s == "true") {
        map = LoadTruth(row);
      } else if (s == "estimated") {
        const fs::path p = o.maps_dir / (row.noisy.stem().string() + ".smap");
        if (!fs::exists(p)) throw IoError("missing map " + p.string());
        map = LoadSigmaMap(p);
      } else if (s == "cnn") {
        map = Estimate(*params, noisy);
      } else {
        map = LocalDctEstimate(noisy, o.dct);
      }
      const Raster out = Denoise(noisy, map, o.denoise);
      SaveRaster(out, o.out / s / (row.noisy.stem().string() + ".png"));
      report.Add({image, s, row.sigma_av, row.clipped, {}, Psnr(clean, out), Ssim(clean, out)});
    }
  }
  report.WriteCsv(o.out / "denoise.csv", provenance.Lines());
  provenance.Write(o.out);
  WriteAggregates(report, log);
}

void RunReport(const ReportOptions& o, std::ostream& log) {
  if (o.inputs.empty()) throw UsageError("no report files given");
  std::ostringstream text;
  for (const auto& input : o.inputs) {
    const EvalReport report = EvalReport::ReadCsv(input);
    text << "== " << input.filename().string() << " (" << KindName(report.kind()) << ")\n";
    WriteAggregates(report, text);
  }
  log << text.str();
  if (!o.out.empty()) {
    PrepareOutputDir(o.out);
    WriteText(o.out / "summary.txt", text.str());
  }
}

}  // namespace sigmap::cli
