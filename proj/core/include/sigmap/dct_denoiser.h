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

#ifndef SIGMAP_DCT_DENOISER_H_
#define SIGMAP_DCT_DENOISER_H_

#include "sigmap/raster.h"

namespace sigmap {

struct DenoiseSpec {
  int block = 8;  // fixed
  // 1 = every block position; 4 = fast mode.
  int step = 1;
  // Hard threshold in units of the local sigma.
  double threshold_factor = 2.7;
};

// Sliding 8x8 DCT hard-threshold denoiser driven by a per-pixel sigma-map.
// For each block: forward DCT, zero every non-DC coefficient with
// |c| < threshold_factor * sigma_local (sigma_local = mean of the map over the
// block), inverse DCT. Overlapping reconstructions are averaged with weight
// 1 / (1 + retained non-DC coefficients). Color channels share the map.
Raster Denoise(const Raster& noisy, const SigmaMap& map, const DenoiseSpec& spec = {});

}  // namespace sigmap

#endif  // SIGMAP_DCT_DENOISER_H_
