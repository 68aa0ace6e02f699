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

#include "sigmap/scenes.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace sigmap {
namespace {

using Color = std::array<double, 3>;

Color RandomColor(Prng& rng, int channels, double lo, double hi) {
  Color c;
  const double base = lo + (hi - lo) * rng.Uniform();
  for (int k = 0; k < 3; ++k) {
    c[k] = channels == 1 ? base : std::clamp(base + 40.0 * (rng.Uniform() - 0.5), lo, hi);
  }
  return c;
}

// Bilinearly interpolated lattice noise with values in [-1, 1].
class ValueNoise {
 public:
  ValueNoise(int width, int height, double cell, Prng& rng)
      : cell_(cell),
        gw_(static_cast<int>(width / cell) + 2),
        gh_(static_cast<int>(height / cell) + 2),
        grid_(static_cast<std::size_t>(gw_) * gh_) {
    for (double& g : grid_) g = 2.0 * rng.Uniform() - 1.0;
  }

  double operator()(double x, double y) const {
    const double gx = x / cell_;
    const double gy = y / cell_;
    const int ix = std::min(static_cast<int>(gx), gw_ - 2);
    const int iy = std::min(static_cast<int>(gy), gh_ - 2);
    double fx = gx - ix;
    double fy = gy - iy;
    fx = fx * fx * (3.0 - 2.0 * fx);
    fy = fy * fy * (3.0 - 2.0 * fy);
    auto g = [&](int a, int b) { return grid_[static_cast<std::size_t>(b) * gw_ + a]; };
    const double top = g(ix, iy) * (1 - fx) + g(ix + 1, iy) * fx;
    const double bot = g(ix, iy + 1) * (1 - fx) + g(ix + 1, iy + 1) * fx;
    return top * (1 - fy) + bot * fy;
  }

 private:
  double cell_;
  int gw_;
  int gh_;
  std::vector<double> grid_;
};

enum class Fill { kFlat, kGrating, kTexture, kShade };

}  // namespace

Raster FlatImage(int width, int height, int channels, double value) {
  return Raster(width, height, channels, value);
}

Raster GenerateScene(int width, int height, int channels, Prng& rng) {
  Raster img(width, height, channels);

  // Background: bilinear blend of four corner colors plus low-frequency noise.
  std::array<Color, 4> corners;
  for (auto& c : corners) c = RandomColor(rng, channels, 30.0, 225.0);
  ValueNoise bg_noise(width, height, std::max(width, height) / 3.0, rng);
  const double bg_amp = 25.0 * rng.Uniform();
  for (int y = 0; y < height; ++y) {
    const double v = (y + 0.5) / height;
    for (int x = 0; x < width; ++x) {
      const double u = (x + 0.5) / width;
      const double n = bg_amp * bg_noise(x, y);
      for (int k = 0; k < channels; ++k) {
        const double top = corners[0][k] * (1 - u) + corners[1][k] * u;
        const double bot = corners[2][k] * (1 - u) + corners[3][k] * u;
        img.at(x, y, k) = top * (1 - v) + bot * v + n;
      }
    }
  }

  const int side = std::max(width, height);
  const int shapes = 4 + static_cast<int>(rng.UniformInt(7));
  for (int s = 0; s < shapes; ++s) {
    const bool ellipse = rng.Uniform() < 0.5;
    const double cx = width * rng.Uniform();
    const double cy = height * rng.Uniform();
    const double rx = side * (0.05 + 0.25 * rng.Uniform());
    const double ry = side * (0.05 + 0.25 * rng.Uniform());
    const double rot = std::numbers::pi * rng.Uniform();
    const Color color = RandomColor(rng, channels, 20.0, 235.0);
    const auto fill = static_cast<Fill>(rng.UniformInt(4));
    const double period = 2.5 + 12.0 * rng.Uniform();
    const double grating_angle = std::numbers::pi * rng.Uniform();
    const double amp = 15.0 + 45.0 * rng.Uniform();
    ValueNoise tex(width, height, 1.5 + 6.0 * rng.Uniform(), rng);
    const double shade_angle = 2.0 * std::numbers::pi * rng.Uniform();
    const double ca = std::cos(rot);
    const double sa = std::sin(rot);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const double dx = x + 0.5 - cx;
        const double dy = y + 0.5 - cy;
        const double lx = (ca * dx + sa * dy) / rx;
        const double ly = (-sa * dx + ca * dy) / ry;
        const bool inside = ellipse ? lx * lx + ly * ly <= 1.0
                                    : std::abs(lx) <= 1.0 && std::abs(ly) <= 1.0;
        if (!inside) continue;
        double delta = 0.0;
        switch (fill) {
          case Fill::kFlat:
            break;
          case Fill::kGrating: {
            const double t = dx * std::cos(grating_angle) + dy * std::sin(grating_angle);
            delta = amp * std::sin(2.0 * std::numbers::pi * t / period);
            break;
          }
          case Fill::kTexture:
            delta = amp * tex(x, y);
            break;
          case Fill::kShade:
            delta = amp * (lx * std::cos(shade_angle) + ly * std::sin(shade_angle));
            break;
        }
        for (int k = 0; k < channels; ++k) img.at(x, y, k) = color[k] + delta;
      }
    }
  }

  for (double& v : img.data()) v = std::clamp(v, 8.0, 247.0);
  return img;
}

}  // namespace sigmap
