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


#include "cli/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <utility>

#include "cli/commands.h"
#include "cli/provenance.h"

namespace sigmap::cli {
namespace {

// Options that name where results go, or where settings came from, do not
// change the results and stay out of the config hash.
bool HashedOption(const CLI::Option* opt) {
  const std::string name = opt->get_name();
  return name != "--help" && name != "--config" && name != "--out" && name != "--version";
}

void CollectSettings(const CLI::App* app, std::vector<std::pair<std::string, std::string>>& out) {
  for (const CLI::Option* opt : app->get_options()) {
    if (!HashedOption(opt)) continue;
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
    } else {
      value = opt->get_default_str();
    }
    const std::string prefix = app->get_parent() ? app->get_name() + "." : "";
    out.emplace_back(prefix + opt->get_name(), value);
  }
}

void AddDctOptions(CLI::App* cmd, DctBlockSpec& dct) {
  cmd->add_option("--dct-step", dct.step, "Block stride of the local-DCT baseline")
      ->check(CLI::Range(1, 8));
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Sigma-map synthesis, estimation and evaluation", "sigmap");
  app.option_defaults()->always_capture_default();
  app.config_formatter(std::make_shared<CLI::ConfigINI>());
  app.set_config("--config", "", "INI file; [verb] sections hold verb options");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_version_flag("--version", std::string(ToolVersion()));
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Random seed");

  std::function<void(const Provenance&)> action;

  MakeCorpusOptions corpus;
  auto* make_corpus = app.add_subcommand("make-corpus", "Write procedural clean images and a manifest");
  make_corpus->add_option("--count", corpus.count, "Number of images");
  make_corpus->add_option("--width", corpus.width, "Image width");
  make_corpus->add_option("--height", corpus.height, "Image height");
  make_corpus->add_option("--channels", corpus.channels, "1 or 3");
  make_corpus->add_option("--flat", corpus.flat, "Write flat images of this value instead of scenes");
  make_corpus->add_option("--out", corpus.out, "Output directory")->required();
  make_corpus->callback([&] { action = [&](const Provenance& p) { RunMakeCorpus(corpus, p, out); }; });

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Noise a corpus with known sigma-maps");
  synth_cmd->add_option("--manifest", synth.manifest, "Corpus manifest (one image per line)")->required();
  synth_cmd->add_option("--sigma-av", synth.sigma_av, "Mean noise levels")->delimiter(',');
  synth_cmd->add_option("--model", synth.models,
                        "Map models: gaussian_peak, linear_ramp, sinusoidal, constant")
      ->delimiter(',');
  synth_cmd->add_flag("--clip", synth.clip, "Clamp noisy values to [0, 255]");
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();
  synth_cmd->callback([&] { action = [&](const Provenance& p) { RunSynth(synth, p, out); }; });

  TrainCommandOptions train;
  std::string brightness = "same";
  std::string precision = "float";
  auto* train_cmd = app.add_subcommand("train", "Train the sigma-map estimator");
  train_cmd->add_option("--manifest", train.manifest, "Corpus manifest")->required();
  train_cmd->add_option("--downscale", train.downscale, "Integer box downscale on load");
  train_cmd->add_option("--iterations", train.schedule.total_iterations, "Total iterations");
  train_cmd->add_option("--batch", train.schedule.batch, "Minibatch size (even)");
  train_cmd->add_option("--patch", train.pipeline.patch, "Patch edge, a multiple of 8");
  train_cmd->add_option("--lr1", train.schedule.lr_stage1, "First-stage learning rate");
  train_cmd->add_option("--lr2", train.schedule.lr_stage2, "Second-stage learning rate");
  train_cmd->add_option("--stage1-fraction", train.schedule.stage1_fraction,
                        "Share of iterations at the first rate");
  train_cmd->add_option("--widths", train.config.channels, "Channel widths of levels 0-2")
      ->delimiter(',')
      ->expected(3);
  train_cmd->add_option("--blocks", train.config.blocks, "Residual units per cascade");
  train_cmd->add_option("--input-channels", train.config.input_channels, "1 or 3");
  train_cmd->add_option("--half-normal-scale", train.half_normal_scale, "Scale R of the sigma_av^2 prior");
  train_cmd->add_option("--brightness", brightness, "Brightness source: same or cross")
      ->check(CLI::IsMember({"same", "cross"}));
  train_cmd->add_option("--half-clipped", train.pipeline.half_clipped, "Clip half of every batch");
  train_cmd->add_option("--precision", precision, "float or double")
      ->check(CLI::IsMember({"float", "double"}));
  train_cmd->add_option("--checkpoint-every", train.checkpoint_every, "Periodic checkpoints; 0 disables");
  train_cmd->add_option("--resume", train.resume, "Checkpoint to continue from");
  train_cmd->add_option("--out", train.out, "Output directory")->required();
  train_cmd->callback([&] {
    train.pipeline.brightness =
        brightness == "cross" ? BrightnessSource::kCrossImage : BrightnessSource::kSameFragment;
    train.double_precision = precision == "double";
    action = [&](const Provenance& p) { RunTrain(train, p, out); };
  });

  EstimateCommandOptions estimate;
  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate sigma-maps of images");
  estimate_cmd->add_option("--checkpoint", estimate.estimator.checkpoint, "Trained estimator");
  std::string estimate_baseline;
  estimate_cmd->add_option("--baseline", estimate_baseline, "Baseline: local_dct");
  AddDctOptions(estimate_cmd, estimate.estimator.dct);
  estimate_cmd->add_option("--tile", estimate.estimator.tile, "Tile edge for large images");
  estimate_cmd->add_option("inputs", estimate.inputs, "Input images")->required();
  estimate_cmd->add_option("--out", estimate.out, "Output directory")->required();
  estimate_cmd->callback([&] {
    if (!estimate_baseline.empty()) estimate.estimator.baselines = {estimate_baseline};
    action = [&](const Provenance& p) { RunEstimate(estimate, p, out); };
  });

  EvaluateOptions evaluate;
  evaluate.estimator.baselines = {"local_dct"};
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score estimators on a synth manifest");
  evaluate_cmd->add_option("--manifest", evaluate.manifest, "manifest.csv written by synth")->required();
  evaluate_cmd->add_option("--checkpoint", evaluate.estimator.checkpoint, "Trained estimator");
  evaluate_cmd->add_option("--baseline", evaluate.estimator.baselines, "Baselines: local_dct, truth")
      ->delimiter(',');
  evaluate_cmd->add_flag("--awgn", evaluate.awgn, "Score global std estimates (map medians)");
  AddDctOptions(evaluate_cmd, evaluate.estimator.dct);
  evaluate_cmd->add_option("--tile", evaluate.estimator.tile, "Tile edge for large images");
  evaluate_cmd->add_option("--out", evaluate.out, "Output directory")->required();
  evaluate_cmd->callback([&] { action = [&](const Provenance& p) { RunEvaluate(evaluate, p, out); }; });

  DenoiseCommandOptions denoise;
  auto* denoise_cmd = app.add_subcommand("denoise", "Denoise a synth manifest with sigma-maps");
  denoise_cmd->add_option("--manifest", denoise.manifest, "manifest.csv written by synth")->required();
  denoise_cmd->add_option("--map-source", denoise.map_sources,
                          "Map sources: true, estimated, local_dct, cnn")
      ->delimiter(',');
  denoise_cmd->add_option("--maps-dir", denoise.maps_dir, "Directory of <noisy stem>.smap files");
  denoise_cmd->add_option("--checkpoint", denoise.checkpoint, "Trained estimator");
  AddDctOptions(denoise_cmd, denoise.dct);
  denoise_cmd->add_option("--step", denoise.denoise.step, "Denoiser block stride");
  denoise_cmd->add_option("--threshold-factor", denoise.denoise.threshold_factor,
                          "Hard threshold in units of local sigma");
  denoise_cmd->add_option("--out", denoise.out, "Output directory")->required();
  denoise_cmd->callback([&] { action = [&](const Provenance& p) { RunDenoise(denoise, p, out); }; });

  ReportOptions report;
  auto* report_cmd = app.add_subcommand("report", "Summarize report CSV files");
  report_cmd->add_option("inputs", report.inputs, "CSV files")->required();
  report_cmd->add_option("--out", report.out, "Also write summary.txt here");
  report_cmd->callback([&] { action = [&](const Provenance&) { RunReport(report, out); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const CLI::App* cmd = app.get_subcommands().front();
    std::vector<std::pair<std::string, std::string>> settings;
    CollectSettings(&app, settings);
    CollectSettings(cmd, settings);
    const Provenance provenance{cmd->get_name(), seed, SettingsHash(std::move(settings))};
    action(provenance);
  } catch (const ParameterError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const DegenerateInputError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace sigmap::cli
