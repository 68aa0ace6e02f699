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

#include <algorithm>
#include <string>
#include <vector>

#include "estimator/network.h"
#include "sigmap/error.h"
#include "sigmap/estimator.h"

namespace sigmap {
namespace {

// Runs the network on an image whose dimensions are already multiples of 8.
template <typename T>
std::vector<double> RunPadded(const nn::Network<T>& net, std::span<const T> p,
                              const Raster& padded,
                              std::vector<std::pair<int, int>>* shapes = nullptr) {
  const nn::Mat<T> sigma = net.Forward(p, nn::ToTensor<T>(padded), nullptr, shapes);
  std::vector<double> out(static_cast<std::size_t>(sigma.cols()));
  for (Eigen::Index i = 0; i < sigma.cols(); ++i) out[static_cast<std::size_t>(i)] = sigma(0, i);
  return out;
}

SigmaMap CropMap(const std::vector<double>& values, int stride, int w, int h) {
  std::vector<double> data(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(y) * stride, w,
                data.begin() + static_cast<std::ptrdiff_t>(y) * w);
  }
  return SigmaMap(w, h, std::move(data));
}

std::vector<int> TileOrigins(int length, int tile) {
  if (length <= tile) return {0};
  std::vector<int> origins;
  const int stride = tile - kTileOverlap;
  for (int p = 0; p + tile < length; p += stride) origins.push_back(p);
  origins.push_back(length - tile);
  return origins;
}

// Linear feather: ramps over kTileOverlap pixels on sides shared with a
// neighboring tile.
double Ramp(int p, int extent, bool ramp_low, bool ramp_high) {
  double w = 1.0;
  if (ramp_low) w = std::min(w, (p + 0.5) / kTileOverlap);
  if (ramp_high) w = std::min(w, (extent - p - 0.5) / kTileOverlap);
  return w;
}

template <typename T>
SigmaMap EstimateImpl(const EstimatorParams& params, const Raster& image,
                      const EstimateOptions& options) {
  const nn::Network<T> net(params.config());
  const std::vector<T> p(params.values().begin(), params.values().end());
  const Raster padded = nn::PadToMultiple(image, 8);
  const int wp = padded.width();
  const int hp = padded.height();
  if (wp <= options.tile && hp <= options.tile) {
    return CropMap(RunPadded<T>(net, p, padded), wp, image.width(), image.height());
  }
  int halo = options.halo;
  if (halo < 0) halo = (ReceptiveRadius(params.config()) + 7) / 8 * 8;
  const auto xs = TileOrigins(wp, options.tile);
  const auto ys = TileOrigins(hp, options.tile);
  std::vector<double> acc(static_cast<std::size_t>(wp) * hp, 0.0);
  std::vector<double> weight(acc.size(), 0.0);
  for (int oy : ys) {
    const int ch = std::min(options.tile, hp);
    const int wy0 = std::max(0, oy - halo);
    const int wy1 = std::min(hp, oy + ch + halo);
    for (int ox : xs) {
      const int cw = std::min(options.tile, wp);
      const int wx0 = std::max(0, ox - halo);
      const int wx1 = std::min(wp, ox + cw + halo);
      const Raster window = padded.Crop(wx0, wy0, wx1 - wx0, wy1 - wy0);
      const std::vector<double> sigma = RunPadded<T>(net, p, window);
      const int ww = wx1 - wx0;
      for (int y = 0; y < ch; ++y) {
        const double ry = Ramp(y, ch, oy > 0, oy + ch < hp);
        for (int x = 0; x < cw; ++x) {
          const double wgt = ry * Ramp(x, cw, ox > 0, ox + cw < wp);
          const std::size_t src = static_cast<std::size_t>(oy + y - wy0) * ww + (ox + x - wx0);
          const std::size_t dst = static_cast<std::size_t>(oy + y) * wp + ox + x;
          acc[dst] += wgt * sigma[src];
          weight[dst] += wgt;
        }
      }
    }
  }
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] /= weight[i];
  return CropMap(acc, wp, image.width(), image.height());
}

}  // namespace

SigmaMap Forward(const EstimatorParams& params, const Raster& image, Precision precision) {
  const Raster padded = nn::PadToMultiple(image, 8);
  std::vector<double> sigma;
  if (precision == Precision::kFloat) {
    const nn::Network<float> net(params.config());
    const std::vector<float> p(params.values().begin(), params.values().end());
    sigma = RunPadded<float>(net, p, padded);
  } else {
    const nn::Network<double> net(params.config());
    sigma = RunPadded<double>(net, params.values(), padded);
  }
  return CropMap(sigma, padded.width(), image.width(), image.height());
}

std::vector<std::pair<int, int>> LevelShapes(const EstimatorParams& params, const Raster& image) {
  const Raster padded = nn::PadToMultiple(image, 8);
  const nn::Network<double> net(params.config());
  std::vector<std::pair<int, int>> shapes;
  RunPadded<double>(net, params.values(), padded, &shapes);
  return shapes;
}

SigmaMap Estimate(const EstimatorParams& params, const Raster& image,
                  const EstimateOptions& options) {
  if (options.tile < 64 || options.tile % 8 != 0) {
    ThrowParameter("tile must be >= 64 and a multiple of 8");
  }
  if (options.halo >= 0 && options.halo % 8 != 0) ThrowParameter("halo must be a multiple of 8");
  const int in = params.config().input_channels;
  if (in == 1 && image.channels() == 3) {
    std::vector<double> mean(image.pixel_count(), 0.0);
    for (int c = 0; c < 3; ++c) {
      const SigmaMap m = Estimate(params, image.Channel(c), options);
      for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += m.data()[i] / 3.0;
    }
    return SigmaMap(image.width(), image.height(), std::move(mean));
  }
  if (in != image.channels()) {
    throw DimensionError("estimator expects " + std::to_string(in) + "-channel input, got " +
                         std::to_string(image.channels()));
  }
  return options.precision == Precision::kFloat ? EstimateImpl<float>(params, image, options)
                                                : EstimateImpl<double>(params, image, options);
}

}  // namespace sigmap
