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

#include "sigmap/noise_synth.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "sigmap/error.h"
#include "sigmap/prng.h"
#include "sigmap/scenes.h"

namespace sigmap {
namespace {

double HalfNormalCdf(double x, double r) { return std::erf(x / (r * std::numbers::sqrt2)); }

double SampleStd(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

TEST(SampleMeanVarianceTest, TinyScaleCollapsesToZero) {
  Prng rng(1);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(SampleMeanVariance(rng, 1e-12), 1e-10);
}

TEST(SampleMeanVarianceTest, RejectsNonPositiveScale) {
  Prng rng(1);
  EXPECT_THROW(SampleMeanVariance(rng, 0.0), ParameterError);
  EXPECT_THROW(SampleMeanVariance(rng, -3.0), ParameterError);
  EXPECT_THROW(SampleMeanVariance(rng, NAN), ParameterError);
}

TEST(SampleMeanVarianceTest, HalfNormalMeanMedianAndKs) {
  constexpr double kR = 40.0;
  constexpr int kN = 1000000;
  Prng rng(2024);
  std::vector<double> x(kN);
  double sum = 0;
  for (double& v : x) {
    v = SampleMeanVariance(rng, kR);
    ASSERT_GE(v, 0.0);
    sum += v;
  }
  const double mean = sum / kN;
  EXPECT_GE(mean, 31.6);
  EXPECT_LE(mean, 32.2);
  EXPECT_NEAR(mean, kR * std::sqrt(2.0 / std::numbers::pi), 0.01 * 31.915);

  std::sort(x.begin(), x.end());
  const double median = 0.5 * (x[kN / 2 - 1] + x[kN / 2]);
  EXPECT_NEAR(median, kR * 0.6744897501960817, 0.01 * 26.98);

  double ks = 0;
  for (int i = 0; i < kN; ++i) {
    const double f = HalfNormalCdf(x[i], kR);
    ks = std::max({ks, std::abs(f - static_cast<double>(i) / kN),
                   std::abs(static_cast<double>(i + 1) / kN - f)});
  }
  EXPECT_LT(ks, 0.01);
}

TEST(SigmaMapFromBrightnessTest, ConstantBrightness) {
  const SigmaMap m = SigmaMapFromBrightness(Raster(5, 4, 1, 80.0), 100.0);
  for (double s : m.data()) EXPECT_DOUBLE_EQ(s, 10.0);
}

TEST(SigmaMapFromBrightnessTest, TwiceMeanBrightnessGivesSqrt200) {
  // Mean brightness 50; the first pixel is at twice the mean.
  const Raster b(4, 1, 1, std::vector<double>{100.0, 0.0, 50.0, 50.0});
  const SigmaMap m = SigmaMapFromBrightness(b, 100.0);
  EXPECT_NEAR(m.at(0, 0), 14.142135623730951, 1e-12);
  EXPECT_EQ(m.at(1, 0), 0.0);
  EXPECT_NEAR(m.at(2, 0), 10.0, 1e-12);
}

TEST(SigmaMapFromBrightnessTest, MeanVarianceIdentityOnRandomBrightness) {
  Prng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    Raster b(1 + static_cast<int>(rng.UniformInt(64)), 1 + static_cast<int>(rng.UniformInt(64)), 1);
    for (double& v : b.data()) v = 255.0 * rng.Uniform();
    const double target = SampleMeanVariance(rng, 40.0) + 1e-3;
    const SigmaMap m = SigmaMapFromBrightness(b, target);
    EXPECT_LT(std::abs(m.MeanVariance() - target) / target, 1e-12);
    EXPECT_GE(m.Min(), 0.0);
  }
}

TEST(SigmaMapFromBrightnessTest, DegenerateAndInvalidInputs) {
  EXPECT_THROW(SigmaMapFromBrightness(Raster(3, 3, 1, 0.0), 10.0), DegenerateInputError);
  EXPECT_THROW(SigmaMapFromBrightness(Raster(3, 3, 1, 5.0), -1.0), ParameterError);
  EXPECT_THROW(SigmaMapFromBrightness(Raster(3, 3, 3, 5.0), 1.0), DimensionError);
}

TEST(ApplyNoiseTest, ZeroMapIsIdentity) {
  Prng rng(4);
  const Raster clean = GenerateScene(32, 24, 3, rng);
  EXPECT_EQ(ApplyNoise(clean, SigmaMap(32, 24, 0.0), {}, rng), clean);
}

TEST(ApplyNoiseTest, ConstantMapEmpiricalStd) {
  Prng rng(5);
  const Raster noisy = ApplyNoise(Raster(256, 256, 1, 128.0), ConstantMap(256, 256, 20.0), {}, rng);
  const std::vector<double> v(noisy.data().begin(), noisy.data().end());
  const double sd = SampleStd(v);
  EXPECT_GE(sd, 19.8);
  EXPECT_LE(sd, 20.2);
}

TEST(ApplyNoiseTest, ClippingNearSaturation) {
  Prng rng(6);
  NoiseSpec spec;
  spec.clip = true;
  const Raster noisy = ApplyNoise(Raster(256, 256, 1, 250.0), ConstantMap(256, 256, 30.0), spec, rng);
  for (double v : noisy.data()) {
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 255.0);
  }
  EXPECT_LT(SampleStd({noisy.data().begin(), noisy.data().end()}), 30.0);
}

TEST(ApplyNoiseTest, ClippedIsClampOfSeedMatchedUnclipped) {
  Prng a(7), b(7);
  const Raster clean(64, 64, 1, 240.0);
  const SigmaMap map = ConstantMap(64, 64, 25.0);
  NoiseSpec clip;
  clip.clip = true;
  const Raster raw = ApplyNoise(clean, map, {}, a);
  const Raster clipped = ApplyNoise(clean, map, clip, b);
  for (std::size_t i = 0; i < raw.data().size(); ++i) {
    EXPECT_EQ(clipped.data()[i], std::clamp(raw.data()[i], 0.0, 255.0));
  }
}

TEST(ApplyNoiseTest, PerPixelMonteCarloFidelityAndClipMonotonicity) {
  // A 4x4 map with sigma spanning 2..62; 10^5 realizations per pixel.
  constexpr int kReal = 100000;
  std::vector<double> sig(16);
  for (int i = 0; i < 16; ++i) sig[i] = 2.0 + 4.0 * i;
  const SigmaMap map(4, 4, sig);
  const Raster clean(4, 4, 1, 200.0);
  NoiseSpec clip;
  clip.clip = true;
  Prng rng(10);
  std::vector<double> s1(16), s2(16), c1(16), c2(16);
  for (int r = 0; r < kReal; ++r) {
    Prng twin = rng.Split(static_cast<std::uint64_t>(r));
    Prng twin2 = twin;
    const Raster raw = ApplyNoise(clean, map, {}, twin);
    const Raster cl = ApplyNoise(clean, map, clip, twin2);
    for (int i = 0; i < 16; ++i) {
      const double d = raw.data()[i] - 200.0;
      s1[i] += d;
      s2[i] += d * d;
      const double e = cl.data()[i] - 200.0;
      c1[i] += e;
      c2[i] += e * e;
    }
  }
  for (int i = 0; i < 16; ++i) {
    const double m = s1[i] / kReal;
    const double sd = std::sqrt(s2[i] / kReal - m * m);
    EXPECT_NEAR(sd, sig[i], 0.01 * sig[i]) << "pixel " << i;
    const double cm = c1[i] / kReal;
    const double csd = std::sqrt(c2[i] / kReal - cm * cm);
    EXPECT_LE(csd, sd) << "pixel " << i;
  }
}

TEST(ApplyNoiseTest, ColorSharedMapDrawsIndependentChannels) {
  Prng rng(12);
  const Raster noisy = ApplyNoise(Raster(128, 128, 3, 128.0), ConstantMap(128, 128, 10.0), {}, rng);
  double corr = 0;
  for (std::size_t i = 0; i < noisy.pixel_count(); ++i) {
    corr += (noisy.data()[3 * i] - 128.0) * (noisy.data()[3 * i + 1] - 128.0);
  }
  corr /= 100.0 * static_cast<double>(noisy.pixel_count());
  EXPECT_LT(std::abs(corr), 0.03);

  NoiseSpec correlated;
  correlated.color_shared_map = false;
  const Raster same = ApplyNoise(Raster(8, 8, 3, 128.0), ConstantMap(8, 8, 10.0), correlated, rng);
  for (std::size_t i = 0; i < same.pixel_count(); ++i) {
    EXPECT_EQ(same.data()[3 * i], same.data()[3 * i + 2]);
  }
}

TEST(ApplyNoiseTest, DimensionMismatch) {
  Prng rng(1);
  EXPECT_THROW(ApplyNoise(Raster(4, 4, 1), SigmaMap(4, 5), {}, rng), DimensionError);
}

TEST(ApplyNoiseTest, ConstantMapIsIidAwgn) {
  // Lag-1 autocorrelation of the noise field is ~0.
  Prng rng(13);
  const Raster noisy = ApplyNoise(Raster(256, 256, 1, 100.0), ConstantMap(256, 256, 15.0), {}, rng);
  double acc = 0;
  int n = 0;
  for (int y = 0; y < 256; ++y) {
    for (int x = 0; x + 1 < 256; ++x, ++n) {
      acc += (noisy.at(x, y) - 100.0) * (noisy.at(x + 1, y) - 100.0);
    }
  }
  EXPECT_LT(std::abs(acc / n / 225.0), 0.02);
}

TEST(TestMapTest, ZeroSlopeRampIsConstant) {
  TestMapModel m;
  m.kind = TestMapKind::kLinearRamp;
  const SigmaMap map = GenerateTestMap(m, 17, 9);
  EXPECT_EQ(map.Min(), map.Max());
}

TEST(TestMapTest, CenteredPeakMaximumAtCenterPixel) {
  TestMapModel m;
  m.kind = TestMapKind::kGaussianPeak;
  const SigmaMap map = GenerateTestMap(m, 33, 33);
  EXPECT_EQ(map.at(16, 16), map.Max());
  for (int y = 0; y < 33; ++y) {
    for (int x = 0; x < 33; ++x) {
      if (x != 16 || y != 16) {
        EXPECT_LT(map.at(x, y), map.at(16, 16));
      }
    }
  }
}

TEST(TestMapTest, RandomModelsAreStrictlyPositiveWithFloor) {
  Prng rng(21);
  for (auto kind : {TestMapKind::kGaussianPeak, TestMapKind::kLinearRamp, TestMapKind::kSinusoidal}) {
    for (int i = 0; i < 50; ++i) {
      const SigmaMap map = GenerateTestMap(kind, 48, 40, rng);
      EXPECT_GT(map.Min(), 0.0);
      EXPECT_GE(map.Min(), 0.05 * map.Max() - 1e-15);
    }
  }
  TestMapModel bad;
  bad.kind = TestMapKind::kSinusoidal;
  bad.amplitude = 1.5;
  EXPECT_THROW(GenerateTestMap(bad, 8, 8), ParameterError);
}

TEST(TestMapTest, KindNamesRoundTrip) {
  for (auto kind : {TestMapKind::kGaussianPeak, TestMapKind::kLinearRamp, TestMapKind::kSinusoidal}) {
    EXPECT_EQ(ParseTestMapKind(TestMapKindName(kind)), kind);
  }
  EXPECT_FALSE(ParseTestMapKind("spiral").has_value());
}

TEST(ScaleMapToTargetTest, ConstantFiveToTen) {
  const SigmaMap out = ScaleMapToTarget(ConstantMap(3, 3, 5.0), 10.0);
  for (double v : out.data()) EXPECT_DOUBLE_EQ(v, 10.0);
}

TEST(ScaleMapToTargetTest, TwoPixelHandExample) {
  const SigmaMap out = ScaleMapToTarget(SigmaMap(2, 1, std::vector<double>{3.0, 4.0}), 5.0);
  EXPECT_NEAR(out.at(0, 0), 3.0 * std::numbers::sqrt2, 1e-12);
  EXPECT_NEAR(out.at(1, 0), 4.0 * std::numbers::sqrt2, 1e-12);
}

TEST(ScaleMapToTargetTest, DefiningPropertyOnRandomMaps) {
  Prng rng(22);
  for (int i = 0; i < 100; ++i) {
    const auto kind = static_cast<TestMapKind>(i % 3);
    const double target = 1.0 + 49.0 * rng.Uniform();
    const SigmaMap out = ScaleMapToTarget(GenerateTestMap(kind, 30, 20, rng), target);
    EXPECT_NEAR(out.MeanVariance(), target * target, 1e-10 * target * target);
  }
  EXPECT_THROW(ScaleMapToTarget(SigmaMap(2, 2, 0.0), 3.0), DegenerateInputError);
  EXPECT_THROW(ScaleMapToTarget(SigmaMap(2, 2, 1.0), -3.0), ParameterError);
}

}  // namespace
}  // namespace sigmap
