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

#include "sigmap/dct.h"

#include <cmath>
#include <numbers>

#include "sigmap/error.h"

namespace sigmap {
namespace {

struct Basis {
  // m[u][x] = a(u) cos((2x + 1) u pi / 16)
  double m[kDctSize][kDctSize];

  Basis() {
    for (int u = 0; u < kDctSize; ++u) {
      const double a = u == 0 ? std::sqrt(1.0 / kDctSize) : std::sqrt(2.0 / kDctSize);
      for (int x = 0; x < kDctSize; ++x) {
        m[u][x] = a * std::cos((2 * x + 1) * u * std::numbers::pi / (2.0 * kDctSize));
      }
    }
  }
};

const Basis& GetBasis() {
  static const Basis basis;
  return basis;
}

void CheckSize(std::span<const double> s) {
  if (s.size() != kDctSize * kDctSize) {
    ThrowDimension("DCT block must hold exactly 64 values, got " + std::to_string(s.size()));
  }
}

}  // namespace

Block8 Dct2Forward(std::span<const double> in) {
  CheckSize(in);
  const auto& b = GetBasis().m;
  Block8 tmp{};
  // Rows: tmp[y][u] = sum_x b[u][x] in[y][x]
  for (int y = 0; y < kDctSize; ++y) {
    for (int u = 0; u < kDctSize; ++u) {
      double acc = 0.0;
      for (int x = 0; x < kDctSize; ++x) acc += b[u][x] * in[y * kDctSize + x];
      tmp[y * kDctSize + u] = acc;
    }
  }
  Block8 out{};
  // Columns: out[v][u] = sum_y b[v][y] tmp[y][u]
  for (int v = 0; v < kDctSize; ++v) {
    for (int u = 0; u < kDctSize; ++u) {
      double acc = 0.0;
      for (int y = 0; y < kDctSize; ++y) acc += b[v][y] * tmp[y * kDctSize + u];
      out[v * kDctSize + u] = acc;
    }
  }
  return out;
}

Block8 Dct2Inverse(std::span<const double> in) {
  CheckSize(in);
  const auto& b = GetBasis().m;
  Block8 tmp{};
  // tmp[y][u] = sum_v b[v][y] in[v][u]
  for (int y = 0; y < kDctSize; ++y) {
    for (int u = 0; u < kDctSize; ++u) {
      double acc = 0.0;
      for (int v = 0; v < kDctSize; ++v) acc += b[v][y] * in[v * kDctSize + u];
      tmp[y * kDctSize + u] = acc;
    }
  }
  Block8 out{};
  for (int y = 0; y < kDctSize; ++y) {
    for (int x = 0; x < kDctSize; ++x) {
      double acc = 0.0;
      for (int u = 0; u < kDctSize; ++u) acc += b[u][x] * tmp[y * kDctSize + u];
      out[y * kDctSize + x] = acc;
    }
  }
  return out;
}

}  // namespace sigmap
