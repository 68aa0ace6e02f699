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

#include "sigmap/dct_denoiser.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "sigmap/error.h"
#include "sigmap/metrics.h"
#include "sigmap/noise_synth.h"
#include "sigmap/prng.h"
#include "sigmap/scenes.h"

namespace sigmap {
namespace {

SigmaMap Scaled(const SigmaMap& m, double f) {
  std::vector<double> v(m.data().begin(), m.data().end());
  for (double& x : v) x *= f;
  return SigmaMap(m.width(), m.height(), std::move(v));
}

TEST(DenoiseTest, ZeroMapIsIdentity) {
  Prng rng(1);
  const Raster img = GenerateScene(40, 36, 3, rng);
  const Raster out = Denoise(img, SigmaMap(40, 36, 0.0));
  for (std::size_t i = 0; i < img.data().size(); ++i) EXPECT_NEAR(out.data()[i], img.data()[i], 1e-10);
  DenoiseSpec fast;
  fast.step = 4;
  const Raster out4 = Denoise(img, SigmaMap(40, 36, 0.0), fast);
  for (std::size_t i = 0; i < img.data().size(); ++i) EXPECT_NEAR(out4.data()[i], img.data()[i], 1e-10);
}

TEST(DenoiseTest, FlatFieldGainsTenDecibels) {
  Prng rng(2);
  const Raster clean(256, 256, 1, 128.0);
  const SigmaMap map = ConstantMap(256, 256, 20.0);
  const Raster noisy = ApplyNoise(clean, map, {}, rng);
  const double gain = Psnr(clean, Denoise(noisy, map)) - Psnr(clean, noisy);
  EXPECT_GE(gain, 10.0);
}

TEST(DenoiseTest, SceneWithNonStationaryNoiseGainsTwoDecibels) {
  Prng rng(3);
  const Raster clean = GenerateScene(256, 256, 1, rng);
  const SigmaMap map = ScaleMapToTarget(GenerateTestMap(TestMapKind::kGaussianPeak, 256, 256, rng), 20.0);
  const Raster noisy = ApplyNoise(clean, map, {}, rng);
  EXPECT_GT(Psnr(clean, Denoise(noisy, map)), Psnr(clean, noisy) + 2.0);
}

TEST(DenoiseTest, TrueMapBeatsOverestimatedMap) {
  Prng rng(4);
  for (auto kind : {TestMapKind::kGaussianPeak, TestMapKind::kLinearRamp, TestMapKind::kSinusoidal}) {
    const Raster clean = GenerateScene(128, 128, 1, rng);
    const SigmaMap map = ScaleMapToTarget(GenerateTestMap(kind, 128, 128, rng), 20.0);
    const Raster noisy = ApplyNoise(clean, map, {}, rng);
    EXPECT_GE(Psnr(clean, Denoise(noisy, map)), Psnr(clean, Denoise(noisy, Scaled(map, 2.0))));
  }
}

TEST(DenoiseTest, ColorChannelsShareTheMap) {
  Prng rng(5);
  const Raster clean = GenerateScene(48, 48, 3, rng);
  const SigmaMap map = ConstantMap(48, 48, 15.0);
  const Raster noisy = ApplyNoise(clean, map, {}, rng);
  const Raster out = Denoise(noisy, map);
  for (int c = 0; c < 3; ++c) EXPECT_EQ(out.Channel(c), Denoise(noisy.Channel(c), map));
}

TEST(DenoiseTest, Validation) {
  EXPECT_THROW(Denoise(Raster(16, 16, 1), SigmaMap(16, 8)), DimensionError);
  EXPECT_THROW(Denoise(Raster(7, 7, 1), SigmaMap(7, 7)), DimensionError);
  DenoiseSpec spec;
  spec.step = 0;
  EXPECT_THROW(Denoise(Raster(16, 16, 1), SigmaMap(16, 16), spec), ParameterError);
  spec = DenoiseSpec{};
  spec.threshold_factor = 0.0;
  EXPECT_THROW(Denoise(Raster(16, 16, 1), SigmaMap(16, 16), spec), ParameterError);
}

}  // namespace
}  // namespace sigmap
