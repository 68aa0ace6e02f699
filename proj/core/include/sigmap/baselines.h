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

#ifndef SIGMAP_BASELINES_H_
#define SIGMAP_BASELINES_H_

#include <span>
#include <vector>

#include "sigmap/raster.h"

namespace sigmap {

// Classical local-DCT sigma-map estimator.
struct DctBlockSpec {
  int block = 8;  // fixed; kept for reporting
  int step = 4;
  // Coefficients (u, v) with u + v >= min_index_sum are treated as
  // noise-dominated high frequencies.
  int min_index_sum = 8;
};

// Gaussian consistency factor of the median absolute deviation.
inline constexpr double kMadToSigma = 1.4826;

// For every 8x8 block on a `step` grid (the last row/column of blocks is
// aligned to the image edge), sigma_hat = 1.4826 * median |c| over the
// high-frequency DCT coefficients. Each pixel receives the mean sigma_hat of
// the blocks covering it. Color images are estimated per channel and the
// channel maps averaged.
SigmaMap LocalDctEstimate(const Raster& image, const DctBlockSpec& spec = {});

// Median of all map values (mean of the two middle values for even counts).
double GlobalStdFromMap(const SigmaMap& map);

// Median of a sample; throws ParameterError on empty input.
double Median(std::vector<double> values);

// Block origins along one axis: 0, step, 2*step, ... plus length - block
// when the grid does not land on the edge.
std::vector<int> BlockOrigins(int length, int block, int step);

}  // namespace sigmap

#endif  // SIGMAP_BASELINES_H_
