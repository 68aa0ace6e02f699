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

#include "sigmap/metrics.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "sigmap/error.h"
#include "sigmap/noise_synth.h"
#include "sigmap/prng.h"
#include "sigmap/scenes.h"

namespace sigmap {
namespace {

// Direct SSIM: for every valid window position, weighted moments with a
// normalized 11x11 Gaussian (sigma 1.5), then the mean of the index.
double ReferenceSsim(const Raster& a, const Raster& b) {
  double w[11][11];
  double total = 0;
  for (int j = 0; j < 11; ++j) {
    for (int i = 0; i < 11; ++i) {
      w[j][i] = std::exp(-((i - 5) * (i - 5) + (j - 5) * (j - 5)) / (2 * 1.5 * 1.5));
      total += w[j][i];
    }
  }
  const double c1 = (0.01 * 255) * (0.01 * 255);
  const double c2 = (0.03 * 255) * (0.03 * 255);
  double sum = 0;
  int count = 0;
  for (int c = 0; c < a.channels(); ++c) {
    double acc = 0;
    int n = 0;
    for (int y = 0; y + 11 <= a.height(); ++y) {
      for (int x = 0; x + 11 <= a.width(); ++x) {
        double ma = 0, mb = 0;
        for (int j = 0; j < 11; ++j) {
          for (int i = 0; i < 11; ++i) {
            ma += w[j][i] / total * a.at(x + i, y + j, c);
            mb += w[j][i] / total * b.at(x + i, y + j, c);
          }
        }
        double va = 0, vb = 0, cov = 0;
        for (int j = 0; j < 11; ++j) {
          for (int i = 0; i < 11; ++i) {
            const double da = a.at(x + i, y + j, c) - ma;
            const double db = b.at(x + i, y + j, c) - mb;
            va += w[j][i] / total * da * da;
            vb += w[j][i] / total * db * db;
            cov += w[j][i] / total * da * db;
          }
        }
        acc += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
        ++n;
      }
    }
    sum += acc / n;
    ++count;
  }
  return sum / count;
}

TEST(RelativeMapErrorTest, IdenticalIsZero) {
  const std::vector<SigmaMap> t = {SigmaMap(3, 3, 2.0), SigmaMap(2, 2, 5.0)};
  EXPECT_EQ(RelativeMapError(t, t), 0.0);
}

TEST(RelativeMapErrorTest, DoubledEstimateIsOne) {
  const SigmaMap t(2, 2, std::vector<double>{1, 2, 3, 4});
  const SigmaMap e(2, 2, std::vector<double>{2, 4, 6, 8});
  EXPECT_DOUBLE_EQ(RelativeMapError(e, t), 1.0);
  EXPECT_DOUBLE_EQ(RelativeMapError(std::vector<SigmaMap>{e}, std::vector<SigmaMap>{t}), 1.0);
}

TEST(RelativeMapErrorTest, MeanOfPerPairRatios) {
  // Constant truths make each ratio |e - t| / t.
  const std::vector<SigmaMap> t = {SigmaMap(4, 4, 10.0), SigmaMap(2, 2, 10.0)};
  const std::vector<SigmaMap> e = {SigmaMap(4, 4, 12.0), SigmaMap(2, 2, 6.0)};
  EXPECT_DOUBLE_EQ(RelativeMapError(e, t), 0.3);
  // Pooled: sqrt(16*4 + 4*16) / sqrt(20*100).
  EXPECT_DOUBLE_EQ(RelativeMapError(e, t, MapErrorAggregation::kPooled),
                   std::sqrt(128.0) / std::sqrt(2000.0));
}

TEST(RelativeMapErrorTest, ScaleHomogeneousOfDegreeZero) {
  Prng rng(1);
  std::vector<SigmaMap> t, e, ts, es;
  for (int i = 0; i < 3; ++i) {
    t.push_back(GenerateTestMap(TestMapKind::kSinusoidal, 16, 16, rng));
    e.push_back(GenerateTestMap(TestMapKind::kGaussianPeak, 16, 16, rng));
    ts.push_back(ScaleMapToTarget(t.back(), 7.0 * std::sqrt(t.back().MeanVariance())));
    es.push_back(ScaleMapToTarget(e.back(), 7.0 * std::sqrt(e.back().MeanVariance())));
  }
  EXPECT_NEAR(RelativeMapError(es, ts), RelativeMapError(e, t), 1e-12);
  EXPECT_NEAR(RelativeMapError(es, ts, MapErrorAggregation::kPooled),
              RelativeMapError(e, t, MapErrorAggregation::kPooled), 1e-12);
}

TEST(RelativeMapErrorTest, Errors) {
  const std::vector<SigmaMap> one = {SigmaMap(2, 2, 1.0)};
  const std::vector<SigmaMap> two = {SigmaMap(2, 2, 1.0), SigmaMap(2, 2, 1.0)};
  EXPECT_THROW(RelativeMapError(one, two), DimensionError);
  EXPECT_THROW(RelativeMapError(SigmaMap(2, 2, 1.0), SigmaMap(3, 2, 1.0)), DimensionError);
  EXPECT_THROW(RelativeMapError(SigmaMap(2, 2, 1.0), SigmaMap(2, 2, 0.0)), DegenerateInputError);
}

TEST(RelativeStdErrorTest, Examples) {
  EXPECT_EQ(RelativeStdError(std::vector<double>{5, 5, 5}, 5.0), 0.0);
  EXPECT_DOUBLE_EQ(RelativeStdError(std::vector<double>{6}, 5.0), 0.2);
  EXPECT_DOUBLE_EQ(RelativeStdError(std::vector<double>{6, 6, 4, 4}, 5.0), 0.1);
  EXPECT_THROW(RelativeStdError(std::vector<double>{1}, 0.0), ParameterError);
  EXPECT_THROW(RelativeStdError(std::vector<double>{}, 1.0), ParameterError);
}

TEST(RelativeStdErrorTest, ScaleHomogeneous) {
  const std::vector<double> e = {9.5, 10.2, 11.0};
  const std::vector<double> e3 = {28.5, 30.6, 33.0};
  EXPECT_NEAR(RelativeStdError(e3, 30.0), RelativeStdError(e, 10.0), 1e-15);
}

TEST(PsnrTest, ClosedForms) {
  const Raster a(16, 16, 3, 100.0);
  EXPECT_EQ(Psnr(a, a), std::numeric_limits<double>::infinity());
  EXPECT_NEAR(Psnr(a, Raster(16, 16, 3, 101.0)), 20.0 * std::log10(255.0), 1e-6);
  EXPECT_NEAR(Psnr(a, Raster(16, 16, 3, 101.0)), 48.1308, 1e-4);
  EXPECT_NEAR(Psnr(Raster(8, 8, 1, 0.0), Raster(8, 8, 1, 255.0)), 0.0, 1e-6);
  EXPECT_THROW(Psnr(a, Raster(16, 16, 1, 100.0)), DimensionError);
}

TEST(PsnrTest, StrictlyDecreasingInUniformError) {
  const Raster ref(8, 8, 1, 0.0);
  double prev = INFINITY;
  for (double d = 0.5; d <= 255.0; d *= 1.7) {
    const double p = Psnr(ref, Raster(8, 8, 1, d));
    EXPECT_LT(p, prev);
    prev = p;
  }
}

TEST(SsimTest, IdenticalIsExactlyOne) {
  Prng rng(2);
  const Raster img = GenerateScene(40, 33, 3, rng);
  EXPECT_EQ(Ssim(img, img), 1.0);
  for (int i = 0; i < 5; ++i) {
    const Raster other = GenerateScene(64, 48, 3, rng);
    EXPECT_EQ(Ssim(other, other), 1.0);
  }
}

TEST(SsimTest, SymmetricAndMatchesReference) {
  Prng rng(3);
  const Raster a = GenerateScene(24, 20, 1, rng);
  const Raster b = ApplyNoise(a, ConstantMap(24, 20, 15.0), {}, rng);
  EXPECT_EQ(Ssim(a, b), Ssim(b, a));
  EXPECT_NEAR(Ssim(a, b), ReferenceSsim(a, b), 1e-10);
  const Raster c = GenerateScene(24, 20, 3, rng);
  const Raster d = ApplyNoise(c, ConstantMap(24, 20, 30.0), {}, rng);
  EXPECT_NEAR(Ssim(c, d), ReferenceSsim(c, d), 1e-10);
}

TEST(SsimTest, HeavyNoiseOnFlatFieldIsLow) {
  Prng rng(4);
  const Raster flat(128, 128, 1, 128.0);
  const Raster noisy = ApplyNoise(flat, ConstantMap(128, 128, 100.0), {}, rng);
  const double s = Ssim(flat, noisy);
  EXPECT_LT(s, 0.2);
  EXPECT_GT(s, 0.0);
}

TEST(SsimTest, TooSmallIsDimensionError) {
  EXPECT_THROW(Ssim(Raster(10, 20, 1), Raster(10, 20, 1)), DimensionError);
}

TEST(CheckThresholdTest, StrictBound) {
  EXPECT_TRUE(CheckThreshold(0.05));
  EXPECT_FALSE(CheckThreshold(0.1));
  EXPECT_FALSE(CheckThreshold(0.21));
  EXPECT_TRUE(CheckThreshold(0.0));
}

}  // namespace
}  // namespace sigmap
