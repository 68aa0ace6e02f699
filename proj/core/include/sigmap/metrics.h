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

#ifndef SIGMAP_METRICS_H_
#define SIGMAP_METRICS_H_

#include <span>

#include "sigmap/raster.h"

namespace sigmap {

enum class MapErrorAggregation {
  // Mean over image pairs of ||M_e - M_t||_F / ||M_t||_F (default).
  kMeanOfRatios,
  // ||concat(M_e - M_t)|| / ||concat(M_t)||, pooling every pixel of every
  // pair into a single ratio. Offered for sensitivity checks.
  kPooled,
};

// Relative sigma-map error over n (estimate, truth) pairs.
// Throws DimensionError on length/shape mismatch and DegenerateInputError if
// a truth map has zero norm.
double RelativeMapError(std::span<const SigmaMap> estimates, std::span<const SigmaMap> truths,
                        MapErrorAggregation aggregation = MapErrorAggregation::kMeanOfRatios);

// Per-pair ratio ||M_e - M_t||_F / ||M_t||_F.
double RelativeMapError(const SigmaMap& estimate, const SigmaMap& truth);

// ||sigma_e - sigma_t||_2 / (n * sigma_t) for n scalar estimates.
double RelativeStdError(std::span<const double> estimates, double sigma_true);

// 10 log10(255^2 / MSE) over all pixels and channels; +infinity when the
// images are identical.
double Psnr(const Raster& reference, const Raster& test);

// Mean SSIM over all valid 11x11 window positions with a Gaussian window
// (sigma 1.5), K1 = 0.01, K2 = 0.03, L = 255. Color images average the
// per-channel values.
double Ssim(const Raster& reference, const Raster& test);

inline constexpr double kMapErrorThreshold = 0.1;

// True iff eps_m < 0.1, the accuracy needed for the map to be useful in
// denoising.
bool CheckThreshold(double eps_m);

}  // namespace sigmap

#endif  // SIGMAP_METRICS_H_
