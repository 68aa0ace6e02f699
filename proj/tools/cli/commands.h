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


#ifndef SIGMAP_TOOLS_CLI_COMMANDS_H_
#define SIGMAP_TOOLS_CLI_COMMANDS_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cli/provenance.h"
#include "sigmap/baselines.h"
#include "sigmap/dct_denoiser.h"
#include "sigmap/error.h"
#include "sigmap/estimator.h"
#include "sigmap/noise_synth.h"
#include "sigmap/patch_pipeline.h"

namespace sigmap::cli {

namespace fs = std::filesystem;

// Bad flag combination or value; exit code 2.
class UsageError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

struct MakeCorpusOptions {
  int count = 24;
  int width = 256;
  int height = 256;
  int channels = 1;
  // Negative: procedural scenes. Otherwise flat images of this value.
  double flat = -1.0;
  fs::path out;
};

// Writes procedural clean images plus manifest.txt.
void RunMakeCorpus(const MakeCorpusOptions& options, const Provenance& provenance,
                   std::ostream& log);

struct SynthOptions {
  fs::path manifest;
  std::vector<double> sigma_av = {5, 7, 10, 15, 20, 30, 45};
  // Test-map model names, or "constant" for AWGN.
  std::vector<std::string> models = {"gaussian_peak", "linear_ramp", "sinusoidal"};
  bool clip = false;
  fs::path out;
};

// Smallest image edge synth accepts.
inline constexpr int kMinSynthSize = 16;

// Per (image, model, sigma_av): noisy PFM, truth SMAP and a manifest.csv row.
void RunSynth(const SynthOptions& options, const Provenance& provenance, std::ostream& log);

struct TrainCommandOptions {
  fs::path manifest;
  int downscale = 1;
  EstimatorConfig config;
  TrainSchedule schedule;
  PipelineOptions pipeline;
  double half_normal_scale = 40.0;
  bool double_precision = false;
  int checkpoint_every = 0;
  fs::path resume;
  fs::path out;
};

// Writes model.smck, loss.csv and periodic model_<iteration>.smck files.
void RunTrain(const TrainCommandOptions& options, const Provenance& provenance,
              std::ostream& log);

// Map estimator selected on the command line: a checkpoint, or a baseline.
struct EstimatorChoice {
  fs::path checkpoint;
  std::vector<std::string> baselines;
  DctBlockSpec dct;
  int tile = 256;
};

struct EstimateCommandOptions {
  EstimatorChoice estimator;
  std::vector<fs::path> inputs;
  fs::path out;
};

// One <stem>.smap per input and estimates.csv with summary statistics.
void RunEstimate(const EstimateCommandOptions& options, const Provenance& provenance,
                 std::ostream& log);

struct EvaluateOptions {
  fs::path manifest;
  EstimatorChoice estimator;
  // Scores global std estimates (median of the map) instead of maps.
  bool awgn = false;
  fs::path out;
};

// Writes report.csv for every (row, method) of a synth manifest.
void RunEvaluate(const EvaluateOptions& options, const Provenance& provenance,
                 std::ostream& log);

struct DenoiseCommandOptions {
  fs::path manifest;
  // Any of "true", "estimated", "local_dct", "cnn".
  std::vector<std::string> map_sources = {"true"};
  fs::path maps_dir;
  fs::path checkpoint;
  DctBlockSpec dct;
  DenoiseSpec denoise;
  fs::path out;
};

// Writes <source>/<stem>.png and denoise.csv; a "noisy" row scores the input.
void RunDenoise(const DenoiseCommandOptions& options, const Provenance& provenance,
                std::ostream& log);

struct ReportOptions {
  std::vector<fs::path> inputs;
  fs::path out;
};

// Prints the aggregate rows of report CSVs; also writes summary.txt when an
// output directory is given.
void RunReport(const ReportOptions& options, std::ostream& log);

}  // namespace sigmap::cli

#endif  // SIGMAP_TOOLS_CLI_COMMANDS_H_
