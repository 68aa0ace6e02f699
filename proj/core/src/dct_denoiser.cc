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

#include <cmath>
#include <vector>

#include "sigmap/baselines.h"
#include "sigmap/dct.h"
#include "sigmap/error.h"

namespace sigmap {

Raster Denoise(const Raster& noisy, const SigmaMap& map, const DenoiseSpec& spec) {
  if (!SameShape(noisy, map)) ThrowDimension("sigma-map does not match the noisy image");
  if (spec.block != kDctSize) ThrowParameter("denoiser supports 8x8 blocks only");
  if (spec.step < 1) ThrowParameter("denoiser step must be >= 1");
  if (!(spec.threshold_factor > 0.0)) ThrowParameter("threshold factor must be > 0");
  const int w = noisy.width();
  const int h = noisy.height();
  const int channels = noisy.channels();
  if (w < kDctSize || h < kDctSize) ThrowDimension("image smaller than one 8x8 block");

  // Block-mean sigma via a summed-area table.
  std::vector<double> sat(static_cast<std::size_t>(w + 1) * (h + 1), 0.0);
  for (int y = 0; y < h; ++y) {
    double row = 0.0;
    for (int x = 0; x < w; ++x) {
      row += map.at(x, y);
      sat[static_cast<std::size_t>(y + 1) * (w + 1) + x + 1] =
          sat[static_cast<std::size_t>(y) * (w + 1) + x + 1] + row;
    }
  }
  auto block_mean = [&](int x0, int y0) {
    auto s = [&](int x, int y) { return sat[static_cast<std::size_t>(y) * (w + 1) + x]; };
    const double sum = s(x0 + kDctSize, y0 + kDctSize) - s(x0, y0 + kDctSize) -
                       s(x0 + kDctSize, y0) + s(x0, y0);
    return sum / (kDctSize * kDctSize);
  };

  const auto xs = BlockOrigins(w, kDctSize, spec.step);
  const auto ys = BlockOrigins(h, kDctSize, spec.step);
  std::vector<double> acc(noisy.data().size(), 0.0);
  std::vector<double> weight(noisy.data().size(), 0.0);
  Block8 block;
  for (int c = 0; c < channels; ++c) {
    for (int y0 : ys) {
      for (int x0 : xs) {
        const double threshold = spec.threshold_factor * block_mean(x0, y0);
        for (int y = 0; y < kDctSize; ++y) {
          for (int x = 0; x < kDctSize; ++x) block[y * kDctSize + x] = noisy.at(x0 + x, y0 + y, c);
        }
        Block8 coef = Dct2Forward(block);
        int retained = 0;
        for (int i = 1; i < kDctSize * kDctSize; ++i) {
          if (std::abs(coef[i]) < threshold) {
            coef[i] = 0.0;
          } else {
            ++retained;
          }
        }
        const Block8 rec = Dct2Inverse(coef);
        const double wgt = 1.0 / (1.0 + retained);
        for (int y = 0; y < kDctSize; ++y) {
          for (int x = 0; x < kDctSize; ++x) {
            const std::size_t idx =
                (static_cast<std::size_t>(y0 + y) * w + x0 + x) * channels + c;
            acc[idx] += wgt * rec[y * kDctSize + x];
            weight[idx] += wgt;
          }
        }
      }
    }
  }
  std::vector<double> out(acc.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = acc[i] / weight[i];
  return Raster(w, h, channels, std::move(out));
}

}  // namespace sigmap
