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

#ifndef SIGMAP_RASTER_H_
#define SIGMAP_RASTER_H_

#include <cstddef>
#include <span>
#include <vector>

namespace sigmap {

// W x H x C image on the [0, 255] scale, row-major, channel-interleaved.
// Values are unquantized doubles; noisy images that were not clipped may
// leave [0, 255].
class Raster {
 public:
  Raster() = default;
  Raster(int width, int height, int channels, double fill = 0.0);
  Raster(int width, int height, int channels, std::vector<double> data);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width_) * height_;
  }
  bool empty() const { return data_.empty(); }

  double& at(int x, int y, int c = 0) {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }
  double at(int x, int y, int c = 0) const {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  // Single channel c as a 1-channel raster.
  Raster Channel(int c) const;
  // Sub-image [x0, x0 + w) x [y0, y0 + h).
  Raster Crop(int x0, int y0, int w, int h) const;

  bool operator==(const Raster&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

// W x H matrix of per-pixel noise standard deviations, row-major.
// Every value is finite and >= 0; the constructors enforce this.
class SigmaMap {
 public:
  SigmaMap() = default;
  SigmaMap(int width, int height, double fill = 0.0);
  SigmaMap(int width, int height, std::vector<double> data);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double at(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  // Writes are checked for the non-negativity invariant.
  void set(int x, int y, double sigma);

  std::span<const double> data() const { return data_; }

  // Mean of sigma^2 over all pixels (the map's mean variance).
  double MeanVariance() const;
  double Max() const;
  double Min() const;

  bool operator==(const SigmaMap&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

// Per-pixel mean over channels, as a 1-channel raster.
Raster Brightness(const Raster& image);

bool SameShape(const Raster& image, const SigmaMap& map);
bool SameShape(const SigmaMap& a, const SigmaMap& b);

}  // namespace sigmap

#endif  // SIGMAP_RASTER_H_
