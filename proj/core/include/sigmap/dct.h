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

#ifndef SIGMAP_DCT_H_
#define SIGMAP_DCT_H_

#include <array>
#include <span>

namespace sigmap {

inline constexpr int kDctSize = 8;
using Block8 = std::array<double, kDctSize * kDctSize>;

// Orthonormal type-II 2-D DCT of a row-major 8x8 block:
//   C(u, v) = a(u) a(v) sum_{x,y} f(x, y) cos((2x+1) u pi / 16) cos((2y+1) v pi / 16)
// with a(0) = sqrt(1/8), a(k) = sqrt(2/8). Index u runs along columns (x) and
// v along rows (y); coefficient (u, v) is stored at [v * 8 + u].
// Throws DimensionError unless the span holds exactly 64 values.
Block8 Dct2Forward(std::span<const double> block);
Block8 Dct2Inverse(std::span<const double> coefficients);

}  // namespace sigmap

#endif  // SIGMAP_DCT_H_
