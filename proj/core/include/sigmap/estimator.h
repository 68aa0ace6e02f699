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

#ifndef SIGMAP_ESTIMATOR_H_
#define SIGMAP_ESTIMATOR_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sigmap/noise_synth.h"
#include "sigmap/patch_pipeline.h"
#include "sigmap/prng.h"
#include "sigmap/raster.h"

namespace sigmap {

// Multiscale residual encoder/decoder that regresses a sigma-map.
//
// Resolution levels 0..3 (full, 1/2, 1/4, 1/8). Widths are channels[0],
// channels[1], channels[2] for levels 0-2; the 1/8 bottleneck reuses
// channels[2]. Topology:
//
//   head 3x3 conv -> [cascade, 2x2/s2 conv] x3 -> bottleneck cascade
//   -> [2x upsample + 1x1 conv, + encoder skip, cascade] x3 -> tail 3x3 conv
//   -> + gain * mean_c(input) -> softplus -> x kOutputScale
//
// A cascade is `blocks` residual units x + conv(relu(conv(x))). The 3x3 convs
// replicate edge pixels, so a constant image maps to a constant sigma-map.
// Inputs are normalized as (v - 128) / 32; outputs are in pixel-scale sigma
// units.
struct EstimatorConfig {
  std::vector<int> channels = {16, 32, 64};
  int blocks = 2;
  int input_channels = 1;

  static constexpr int kLevels = 3;
  bool operator==(const EstimatorConfig&) const = default;
};

// Throws ParameterError when the config is malformed.
void ValidateConfig(const EstimatorConfig& config);

// Input radius (pixels) that can influence one output pixel.
int ReceptiveRadius(const EstimatorConfig& config);

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  bool operator==(const AdamConfig&) const = default;
};

struct TensorInfo {
  std::string name;
  std::vector<int> shape;
  std::size_t offset = 0;
  std::size_t size = 0;
  int fan_in = 0;
  bool operator==(const TensorInfo&) const = default;
};

// Network weights plus Adam state.
class EstimatorParams {
 public:
  EstimatorParams() = default;

  // Weights ~ U(-sqrt(3 / fan_in), sqrt(3 / fan_in)); the second conv of each
  // residual unit is further scaled by 1/sqrt(unit count) and the tail conv by
  // 0.1, so an untrained network outputs sigma near 22 instead of exploding
  // with depth. Biases and the input skip gain start at zero.
  static EstimatorParams Initialize(const EstimatorConfig& config, std::uint64_t seed);
  static EstimatorParams Zeros(const EstimatorConfig& config);

  const EstimatorConfig& config() const { return config_; }
  const std::vector<TensorInfo>& tensors() const { return tensors_; }
  const TensorInfo& info(std::string_view name) const;

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::span<double> tensor(std::string_view name);
  std::span<const double> tensor(std::string_view name) const;
  std::size_t size() const { return values_.size(); }

  std::span<double> first_moment() { return m_; }
  std::span<const double> first_moment() const { return m_; }
  std::span<double> second_moment() { return v_; }
  std::span<const double> second_moment() const { return v_; }
  std::int64_t iteration() const { return iteration_; }
  void set_iteration(std::int64_t it) { iteration_ = it; }

  AdamConfig& adam() { return adam_; }
  const AdamConfig& adam() const { return adam_; }

  bool operator==(const EstimatorParams&) const = default;

 private:
  EstimatorConfig config_;
  std::vector<TensorInfo> tensors_;
  std::vector<double> values_;
  std::vector<double> m_;
  std::vector<double> v_;
  std::int64_t iteration_ = 0;
  AdamConfig adam_;
};

// Arithmetic used inside forward/backward. Parameters and optimizer state
// are always kept in double.
enum class Precision { kDouble, kFloat };

inline constexpr double kOutputScale = 32.0;

// Sigma-map of one image. Width and height need not be multiples of 8: the
// image is reflect-padded on the right/bottom and the result cropped.
// input channels must equal config.input_channels.
SigmaMap Forward(const EstimatorParams& params, const Raster& image,
                 Precision precision = Precision::kDouble);

// (width, height) of the feature grid at each resolution level, 0..3, for an
// image of the given size, as produced by an actual forward pass.
std::vector<std::pair<int, int>> LevelShapes(const EstimatorParams& params, const Raster& image);

// Mean of squared per-pixel differences.
double LossMse(const SigmaMap& prediction, const SigmaMap& target);

struct Gradients {
  double loss = 0.0;  // mean over the batch of per-sample MSE
  std::vector<double> values;
};

// Gradient of the mean batch MSE w.r.t. every parameter (same layout as
// params.values()). Throws NumericalError naming the layer on non-finite
// activations.
Gradients Backward(const EstimatorParams& params, std::span<const TrainingSample> batch,
                   Precision precision = Precision::kDouble);

// Bias-corrected Adam update in place; increments the iteration counter.
// Throws NumericalError on non-finite gradients.
void AdamStep(EstimatorParams& params, std::span<const double> gradients, double lr);

struct TrainSchedule {
  int total_iterations = 150000;
  double lr_stage1 = 1e-5;
  double lr_stage2 = 5e-6;
  // Iterations [0, round(total * fraction)) use lr_stage1.
  double stage1_fraction = 2.0 / 3.0;
  int batch = 32;

  double LearningRate(int iteration) const;
  int StageBoundary() const;
};

void ValidateSchedule(const TrainSchedule& schedule);

struct TrainOptions {
  PipelineOptions pipeline;
  Precision precision = Precision::kFloat;
  // 0 disables periodic checkpoints.
  int checkpoint_every = 0;
  std::function<void(int iteration, double loss, double lr)> on_iteration;
  std::function<void(const EstimatorParams&)> on_checkpoint;
};

// Runs the training loop. Weights are initialized from a seed drawn from rng
// unless `initial` is given (resuming). Iterations already recorded in
// `initial` count toward the schedule.
EstimatorParams Train(const Corpus& corpus, const EstimatorConfig& config,
                      const TrainSchedule& schedule, const NoiseSpec& spec, Prng& rng,
                      const TrainOptions& options = {}, const EstimatorParams* initial = nullptr);

struct EstimateOptions {
  // Core tile edge; images whose padded size fits are processed whole.
  int tile = 256;
  // Context added around each tile; negative picks the receptive radius
  // rounded up to a multiple of 8, which makes tiled and whole-image results
  // agree.
  int halo = -1;
  Precision precision = Precision::kDouble;
};

inline constexpr int kTileOverlap = 16;

// Sigma-map of an image of any size. Grayscale parameters applied to a color
// image estimate each channel separately and average the maps.
SigmaMap Estimate(const EstimatorParams& params, const Raster& image,
                  const EstimateOptions& options = {});

// Checkpoint container, little-endian:
//   "SMCK", u32 version (1)
//   u32 input_channels, u32 blocks, u32 level count (3), u32 widths[3]
//   f64 beta1, f64 beta2, f64 epsilon
//   i64 iteration
//   u32 tensor count, then per tensor:
//     u32 name length, name bytes, u32 rank, u32 dims[rank],
//     f64 values[size], f64 first_moment[size], f64 second_moment[size]
void SaveCheckpoint(const EstimatorParams& params, const std::filesystem::path& path);
EstimatorParams LoadCheckpoint(const std::filesystem::path& path);
std::vector<std::uint8_t> EncodeCheckpoint(const EstimatorParams& params);
EstimatorParams DecodeCheckpoint(const std::vector<std::uint8_t>& bytes,
                                 const std::string& source = "<memory>");

}  // namespace sigmap

#endif  // SIGMAP_ESTIMATOR_H_
