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

#include "sigmap/baselines.h"

#include <algorithm>
#include <cmath>

#include "sigmap/dct.h"
#include "sigmap/error.h"

namespace sigmap {

double Median(std::vector<double> values) {
  if (values.empty()) ThrowParameter("median of an empty sample");
  const std::size_t n = values.size();
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(values.begin(), mid, values.end());
  const double upper = *mid;
  if (n % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

std::vector<int> BlockOrigins(int length, int block, int step) {
  std::vector<int> origins;
  for (int p = 0; p + block <= length; p += step) origins.push_back(p);
  if (origins.empty() || origins.back() != length - block) origins.push_back(length - block);
  return origins;
}

SigmaMap LocalDctEstimate(const Raster& image, const DctBlockSpec& spec) {
  if (spec.block != kDctSize) ThrowParameter("local DCT estimator supports 8x8 blocks only");
  if (spec.step < 1 || spec.step > spec.block) ThrowParameter("block step must be in [1, 8]");
  const int w = image.width();
  const int h = image.height();
  if (w < kDctSize || h < kDctSize) ThrowDimension("image smaller than one 8x8 block");

  std::vector<int> mask;
  for (int v = 0; v < kDctSize; ++v) {
    for (int u = 0; u < kDctSize; ++u) {
      if (u + v >= spec.min_index_sum) mask.push_back(v * kDctSize + u);
    }
  }
  if (mask.empty()) ThrowParameter("high-frequency mask is empty");

  const auto xs = BlockOrigins(w, kDctSize, spec.step);
  const auto ys = BlockOrigins(h, kDctSize, spec.step);
  std::vector<double> sum(static_cast<std::size_t>(w) * h, 0.0);
  std::vector<double> count(sum.size(), 0.0);
  Block8 block;
  std::vector<double> mags(mask.size());
  for (int c = 0; c < image.channels(); ++c) {
    for (int y0 : ys) {
      for (int x0 : xs) {
        for (int y = 0; y < kDctSize; ++y) {
          for (int x = 0; x < kDctSize; ++x) block[y * kDctSize + x] = image.at(x0 + x, y0 + y, c);
        }
        const Block8 coef = Dct2Forward(block);
        for (std::size_t i = 0; i < mask.size(); ++i) mags[i] = std::abs(coef[mask[i]]);
        const double sigma = kMadToSigma * Median(mags);
        for (int y = 0; y < kDctSize; ++y) {
          for (int x = 0; x < kDctSize; ++x) {
            const std::size_t idx = static_cast<std::size_t>(y0 + y) * w + x0 + x;
            sum[idx] += sigma;
            count[idx] += 1.0;
          }
        }
      }
    }
  }
  // Every pixel is covered since the last block of each axis touches the edge;
  // channel averaging falls out of the shared count.
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] /= count[i];
  return SigmaMap(w, h, std::move(sum));
}

double GlobalStdFromMap(const SigmaMap& map) {
  if (map.empty()) ThrowParameter("global std of an empty sigma-map");
  return Median(std::vector<double>(map.data().begin(), map.data().end()));
}

}  // namespace sigmap
