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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "sigmap/error.h"

namespace sigmap {
namespace {

constexpr double kFloor = 0.05;

}  // namespace

double SampleMeanVariance(Prng& rng, double half_normal_scale) {
  if (!std::isfinite(half_normal_scale) || half_normal_scale <= 0.0) {
    ThrowParameter("half-normal scale R must be finite and > 0");
  }
  return std::abs(half_normal_scale * rng.StandardNormal());
}

SigmaMap SigmaMapFromBrightness(const Raster& brightness, double sigma_av_sq) {
  if (brightness.channels() != 1) {
    ThrowDimension("brightness must be a single-channel raster");
  }
  if (!std::isfinite(sigma_av_sq) || sigma_av_sq < 0.0) {
    ThrowParameter("sigma_av^2 must be finite and >= 0");
  }
  const auto b = brightness.data();
  double sum = 0.0;
  for (double v : b) {
    if (v < 0.0) ThrowParameter("brightness values must be >= 0");
    sum += v;
  }
  const double mean = sum / static_cast<double>(b.size());
  if (!(mean > 0.0)) {
    throw DegenerateInputError("brightness field has zero mean");
  }
  std::vector<double> sigma(b.size());
  const double scale = sigma_av_sq / mean;
  for (std::size_t i = 0; i < b.size(); ++i) sigma[i] = std::sqrt(scale * b[i]);
  return SigmaMap(brightness.width(), brightness.height(), std::move(sigma));
}

Raster ApplyNoise(const Raster& clean, const SigmaMap& map, const NoiseSpec& spec,
                  Prng& rng) {
  if (!SameShape(clean, map)) {
    ThrowDimension("sigma-map " + std::to_string(map.width()) + "x" +
                   std::to_string(map.height()) + " does not match raster " +
                   std::to_string(clean.width()) + "x" + std::to_string(clean.height()));
  }
  Raster noisy = clean;
  auto out = noisy.data();
  const auto sigma = map.data();
  const int c = clean.channels();
  const bool per_channel = c == 1 || spec.color_shared_map;
  for (std::size_t i = 0; i < clean.pixel_count(); ++i) {
    const double s = sigma[i];
    if (per_channel) {
      for (int k = 0; k < c; ++k) out[i * c + k] += s * rng.StandardNormal();
    } else {
      const double n = s * rng.StandardNormal();
      for (int k = 0; k < c; ++k) out[i * c + k] += n;
    }
  }
  if (spec.clip) {
    for (double& v : out) v = std::clamp(v, 0.0, 255.0);
  }
  return noisy;
}

std::string_view TestMapKindName(TestMapKind kind) {
  switch (kind) {
    case TestMapKind::kGaussianPeak:
      return "gaussian_peak";
    case TestMapKind::kLinearRamp:
      return "linear_ramp";
    case TestMapKind::kSinusoidal:
      return "sinusoidal";
  }
  return "unknown";
}

std::optional<TestMapKind> ParseTestMapKind(std::string_view name) {
  for (auto kind : {TestMapKind::kGaussianPeak, TestMapKind::kLinearRamp,
                    TestMapKind::kSinusoidal}) {
    if (TestMapKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

SigmaMap GenerateTestMap(const TestMapModel& m, int width, int height) {
  if (width <= 0 || height <= 0) ThrowDimension("test map dimensions must be positive");
  std::vector<double> v(static_cast<std::size_t>(width) * height);
  // Pixel centers in relative coordinates.
  auto rel_x = [&](int x) { return (x + 0.5) / width; };
  auto rel_y = [&](int y) { return (y + 0.5) / height; };
  switch (m.kind) {
    case TestMapKind::kGaussianPeak: {
      if (!(m.spread > 0.0)) ThrowParameter("gaussian_peak spread must be > 0");
      const double side = std::max(width, height);
      const double s = m.spread * side;
      const double cx = m.center_x * width;
      const double cy = m.center_y * height;
      for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
          const double dx = x + 0.5 - cx;
          const double dy = y + 0.5 - cy;
          const double g = std::exp(-(dx * dx + dy * dy) / (2.0 * s * s));
          v[static_cast<std::size_t>(y) * width + x] = kFloor + (1.0 - kFloor) * g;
        }
      }
      break;
    }
    case TestMapKind::kLinearRamp: {
      for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
          v[static_cast<std::size_t>(y) * width + x] =
              1.0 + m.slope_x * (rel_x(x) - 0.5) + m.slope_y * (rel_y(y) - 0.5);
        }
      }
      break;
    }
    case TestMapKind::kSinusoidal: {
      if (std::abs(m.amplitude) >= 1.0) {
        ThrowParameter("sinusoidal amplitude must be < 1 (offset >= amplitude)");
      }
      for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
          const double arg =
              2.0 * std::numbers::pi * (m.freq_x * rel_x(x) + m.freq_y * rel_y(y)) + m.phase;
          v[static_cast<std::size_t>(y) * width + x] = 1.0 + m.amplitude * std::sin(arg);
        }
      }
      break;
    }
  }
  const double peak = *std::max_element(v.begin(), v.end());
  if (!(peak > 0.0)) ThrowParameter("test map model has no positive values");
  for (double& x : v) x = std::max(x, kFloor * peak);
  return SigmaMap(width, height, std::move(v));
}

TestMapModel RandomTestMapModel(TestMapKind kind, Prng& rng) {
  TestMapModel m;
  m.kind = kind;
  switch (kind) {
    case TestMapKind::kGaussianPeak:
      m.center_x = 0.2 + 0.6 * rng.Uniform();
      m.center_y = 0.2 + 0.6 * rng.Uniform();
      m.spread = 0.15 + 0.25 * rng.Uniform();
      break;
    case TestMapKind::kLinearRamp: {
      const double angle = 2.0 * std::numbers::pi * rng.Uniform();
      const double strength = 0.6 + 1.0 * rng.Uniform();
      m.slope_x = strength * std::cos(angle);
      m.slope_y = strength * std::sin(angle);
      break;
    }
    case TestMapKind::kSinusoidal: {
      m.amplitude = 0.3 + 0.5 * rng.Uniform();
      const double angle = 2.0 * std::numbers::pi * rng.Uniform();
      const double freq = 1.0 + 2.0 * rng.Uniform();
      m.freq_x = freq * std::cos(angle);
      m.freq_y = freq * std::sin(angle);
      m.phase = 2.0 * std::numbers::pi * rng.Uniform();
      break;
    }
  }
  return m;
}

SigmaMap GenerateTestMap(TestMapKind kind, int width, int height, Prng& rng) {
  return GenerateTestMap(RandomTestMapModel(kind, rng), width, height);
}

SigmaMap ScaleMapToTarget(const SigmaMap& map, double sigma_av_target) {
  if (!std::isfinite(sigma_av_target) || sigma_av_target < 0.0) {
    ThrowParameter("target sigma_av must be finite and >= 0");
  }
  const double mv = map.MeanVariance();
  if (!(mv > 0.0)) throw DegenerateInputError("cannot scale an all-zero sigma-map");
  const double c = std::sqrt(sigma_av_target * sigma_av_target / mv);
  std::vector<double> data(map.data().begin(), map.data().end());
  for (double& v : data) v *= c;
  return SigmaMap(map.width(), map.height(), std::move(data));
}

SigmaMap ConstantMap(int width, int height, double sigma) {
  return SigmaMap(width, height, sigma);
}

}  // namespace sigmap
