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

#ifndef SIGMAP_NOISE_SYNTH_H_
#define SIGMAP_NOISE_SYNTH_H_

#include <optional>
#include <string>
#include <string_view>

#include "sigmap/prng.h"
#include "sigmap/raster.h"

namespace sigmap {

struct NoiseSpec {
  // Scale of the half-normal prior on the mean variance.
  double half_normal_scale = 40.0;
  // Clamp noisy values to [0, 255] after sampling.
  bool clip = false;
  // Color images: true draws an independent sample per channel from the
  // shared map; false draws one sample per pixel and adds it to every
  // channel (channel-correlated noise).
  bool color_shared_map = true;
};

// Draws sigma_av^2 = |N(0, R^2)|. The result is in variance units.
double SampleMeanVariance(Prng& rng, double half_normal_scale);

// sigma_ij = sqrt(sigma_av_sq * B_ij / mean(B)). `brightness` must be a
// 1-channel raster with non-negative values and a positive mean.
SigmaMap SigmaMapFromBrightness(const Raster& brightness, double sigma_av_sq);

// y = x + sigma * z per pixel and channel, z ~ N(0, 1), optionally clipped
// to [0, 255]. One normal is consumed per sample even where sigma = 0, so the
// draw sequence depends only on the seed and the raster shape.
Raster ApplyNoise(const Raster& clean, const SigmaMap& map, const NoiseSpec& spec,
                  Prng& rng);

// Parametric non-stationary test maps. Values are relative (peak ~ 1); use
// ScaleMapToTarget to set the noise level. Each model keeps a floor of
// 0.05 * peak so maps are strictly positive.
enum class TestMapKind { kGaussianPeak, kLinearRamp, kSinusoidal };

struct TestMapModel {
  TestMapKind kind = TestMapKind::kGaussianPeak;
  // Gaussian peak: center in relative coordinates and width as a fraction of
  // the larger image side.
  double center_x = 0.5;
  double center_y = 0.5;
  double spread = 0.25;
  // Linear ramp: 1 + slope_x * (x/W - 0.5) + slope_y * (y/H - 0.5).
  double slope_x = 0.0;
  double slope_y = 0.0;
  // Sinusoid: 1 + amplitude * sin(2 pi (freq_x x/W + freq_y y/H) + phase).
  double amplitude = 0.5;
  double freq_x = 1.0;
  double freq_y = 0.0;
  double phase = 0.0;
};

std::string_view TestMapKindName(TestMapKind kind);
std::optional<TestMapKind> ParseTestMapKind(std::string_view name);

// Deterministic evaluation of a fully specified model.
SigmaMap GenerateTestMap(const TestMapModel& model, int width, int height);
// Draws random shape parameters for `kind` from rng, then generates the map.
SigmaMap GenerateTestMap(TestMapKind kind, int width, int height, Prng& rng);
TestMapModel RandomTestMapModel(TestMapKind kind, Prng& rng);

// Returns c * map with c chosen so that mean(sigma^2) == sigma_av_target^2.
SigmaMap ScaleMapToTarget(const SigmaMap& map, double sigma_av_target);

// Constant map; the AWGN special case.
SigmaMap ConstantMap(int width, int height, double sigma);

}  // namespace sigmap

#endif  // SIGMAP_NOISE_SYNTH_H_
