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

#include "estimator/layers.h"

#include "estimator/network.h"
#include "sigmap/error.h"

namespace sigmap::nn {
namespace {

// Mirror index into [0, n) without repeating the edge sample; periodic for
// offsets longer than the signal.
int Reflect(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

}  // namespace

Raster PadToMultiple(const Raster& image, int multiple) {
  const int w = image.width();
  const int h = image.height();
  const int pw = (w + multiple - 1) / multiple * multiple;
  const int ph = (h + multiple - 1) / multiple * multiple;
  if (pw == w && ph == h) return image;
  Raster out(pw, ph, image.channels());
  for (int y = 0; y < ph; ++y) {
    const int sy = Reflect(y, h);
    for (int x = 0; x < pw; ++x) {
      const int sx = Reflect(x, w);
      for (int c = 0; c < image.channels(); ++c) out.at(x, y, c) = image.at(sx, sy, c);
    }
  }
  return out;
}

template <typename T>
Tensor<T> ToTensor(const Raster& image) {
  Tensor<T> t;
  t.h = image.height();
  t.w = image.width();
  const int c = image.channels();
  t.m.resize(c, t.h * t.w);
  const auto data = image.data();
  for (std::size_t i = 0; i < image.pixel_count(); ++i) {
    for (int k = 0; k < c; ++k) t.m(k, static_cast<Eigen::Index>(i)) = static_cast<T>(data[i * c + k]);
  }
  return t;
}

template Tensor<float> ToTensor<float>(const Raster&);
template Tensor<double> ToTensor<double>(const Raster&);

}  // namespace sigmap::nn
