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

#include "sigmap/raster.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sigmap/error.h"

namespace sigmap {
namespace {

void CheckDims(int width, int height) {
  if (width <= 0 || height <= 0) {
    ThrowDimension("dimensions must be positive, got " + std::to_string(width) +
                   "x" + std::to_string(height));
  }
  // Keep w*h*3 comfortably inside size_t and int arithmetic used downstream.
  if (static_cast<long long>(width) * height > (1LL << 30)) {
    ThrowDimension("image too large: " + std::to_string(width) + "x" +
                   std::to_string(height));
  }
}

}  // namespace

Raster::Raster(int width, int height, int channels, double fill)
    : width_(width), height_(height), channels_(channels) {
  CheckDims(width, height);
  if (channels != 1 && channels != 3) {
    ThrowDimension("raster channels must be 1 or 3");
  }
  data_.assign(pixel_count() * channels, fill);
}

Raster::Raster(int width, int height, int channels, std::vector<double> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  CheckDims(width, height);
  if (channels != 1 && channels != 3) {
    ThrowDimension("raster channels must be 1 or 3");
  }
  if (data_.size() != pixel_count() * channels) {
    ThrowDimension("raster data length does not match width*height*channels");
  }
  for (double v : data_) {
    if (!std::isfinite(v)) ThrowParameter("raster values must be finite");
  }
}

Raster Raster::Channel(int c) const {
  if (c < 0 || c >= channels_) ThrowDimension("channel index out of range");
  Raster out(width_, height_, 1);
  for (std::size_t i = 0; i < pixel_count(); ++i) {
    out.data_[i] = data_[i * channels_ + c];
  }
  return out;
}

Raster Raster::Crop(int x0, int y0, int w, int h) const {
  if (x0 < 0 || y0 < 0 || w <= 0 || h <= 0 || x0 + w > width_ ||
      y0 + h > height_) {
    ThrowDimension("crop window outside the raster");
  }
  Raster out(w, h, channels_);
  for (int y = 0; y < h; ++y) {
    const double* src = &data_[(static_cast<std::size_t>(y0 + y) * width_ + x0) * channels_];
    std::copy(src, src + static_cast<std::size_t>(w) * channels_,
              &out.data_[static_cast<std::size_t>(y) * w * channels_]);
  }
  return out;
}

SigmaMap::SigmaMap(int width, int height, double fill)
    : width_(width), height_(height) {
  CheckDims(width, height);
  if (!std::isfinite(fill) || fill < 0.0) {
    ThrowParameter("sigma values must be finite and >= 0");
  }
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

SigmaMap::SigmaMap(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  CheckDims(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    ThrowDimension("sigma-map data length does not match width*height");
  }
  for (double v : data_) {
    if (!std::isfinite(v) || v < 0.0) {
      ThrowParameter("sigma values must be finite and >= 0");
    }
  }
}

void SigmaMap::set(int x, int y, double sigma) {
  if (!std::isfinite(sigma) || sigma < 0.0) {
    ThrowParameter("sigma values must be finite and >= 0");
  }
  data_[static_cast<std::size_t>(y) * width_ + x] = sigma;
}

double SigmaMap::MeanVariance() const {
  double acc = 0.0;
  for (double s : data_) acc += s * s;
  return data_.empty() ? 0.0 : acc / static_cast<double>(data_.size());
}

double SigmaMap::Max() const {
  return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end());
}

double SigmaMap::Min() const {
  return data_.empty() ? 0.0 : *std::min_element(data_.begin(), data_.end());
}

Raster Brightness(const Raster& image) {
  if (image.channels() == 1) return image;
  Raster out(image.width(), image.height(), 1);
  const auto src = image.data();
  auto dst = out.data();
  const int c = image.channels();
  for (std::size_t i = 0; i < image.pixel_count(); ++i) {
    double acc = 0.0;
    for (int k = 0; k < c; ++k) acc += src[i * c + k];
    dst[i] = acc / c;
  }
  return out;
}

bool SameShape(const Raster& image, const SigmaMap& map) {
  return image.width() == map.width() && image.height() == map.height();
}

bool SameShape(const SigmaMap& a, const SigmaMap& b) {
  return a.width() == b.width() && a.height() == b.height();
}

}  // namespace sigmap
