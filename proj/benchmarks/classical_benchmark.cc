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

#include <benchmark/benchmark.h>

#include "sigmap/baselines.h"
#include "sigmap/dct.h"
#include "sigmap/dct_denoiser.h"
#include "sigmap/metrics.h"
#include "sigmap/noise_synth.h"
#include "sigmap/scenes.h"

namespace sigmap {
namespace {

Raster Noisy(int size, double sigma) {
  Prng rng(3);
  const Raster clean = GenerateScene(size, size, 1, rng);
  return ApplyNoise(clean, ConstantMap(size, size, sigma), {}, rng);
}

void BM_Dct8(benchmark::State& state) {
  Block8 block;
  for (int i = 0; i < 64; ++i) block[i] = i * 3.0;
  for (auto _ : state) {
    block = Dct2Inverse(Dct2Forward(block));
    benchmark::DoNotOptimize(block);
  }
}
BENCHMARK(BM_Dct8);

void BM_ApplyNoise(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  Prng rng(4);
  const Raster clean = GenerateScene(size, size, 1, rng);
  const SigmaMap map = SigmaMapFromBrightness(clean, 400.0);
  for (auto _ : state) benchmark::DoNotOptimize(ApplyNoise(clean, map, {}, rng));
  state.SetItemsProcessed(state.iterations() * size * size);
}
BENCHMARK(BM_ApplyNoise)->Arg(128)->Arg(512);

void BM_LocalDctEstimate(benchmark::State& state) {
  const Raster noisy = Noisy(static_cast<int>(state.range(0)), 20.0);
  for (auto _ : state) benchmark::DoNotOptimize(LocalDctEstimate(noisy));
}
BENCHMARK(BM_LocalDctEstimate)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Denoise(benchmark::State& state) {
  const Raster noisy = Noisy(256, 20.0);
  const SigmaMap map = ConstantMap(256, 256, 20.0);
  DenoiseSpec spec;
  spec.step = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Denoise(noisy, map, spec));
}
BENCHMARK(BM_Denoise)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Ssim(benchmark::State& state) {
  Prng rng(5);
  const Raster a = GenerateScene(256, 256, 1, rng);
  const Raster b = Noisy(256, 20.0);
  for (auto _ : state) benchmark::DoNotOptimize(Ssim(a, b));
}
BENCHMARK(BM_Ssim)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sigmap
