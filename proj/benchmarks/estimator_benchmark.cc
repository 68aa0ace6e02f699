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

#include <vector>

#include "sigmap/estimator.h"
#include "sigmap/noise_synth.h"
#include "sigmap/patch_pipeline.h"
#include "sigmap/scenes.h"

namespace sigmap {
namespace {

EstimatorConfig ConfigFor(int width) {
  EstimatorConfig config;
  config.channels = {width, 2 * width, 4 * width};
  return config;
}

std::vector<TrainingSample> Batch(int size, int patch) {
  Prng rng(1);
  std::vector<Raster> images;
  for (int i = 0; i < 4; ++i) images.push_back(GenerateScene(2 * patch, 2 * patch, 1, rng));
  const Corpus corpus(std::move(images));
  PipelineOptions options;
  options.patch = patch;
  return MakeMinibatch(corpus, size, options, {}, rng);
}

void BM_Forward(benchmark::State& state) {
  const auto params = EstimatorParams::Initialize(ConfigFor(static_cast<int>(state.range(0))), 1);
  const auto batch = Batch(2, 128);
  const Precision precision = state.range(1) ? Precision::kFloat : Precision::kDouble;
  for (auto _ : state) benchmark::DoNotOptimize(Forward(params, batch[0].patch, precision));
  state.SetItemsProcessed(state.iterations() * 128 * 128);
}
BENCHMARK(BM_Forward)->ArgsProduct({{8, 16}, {0, 1}})->Unit(benchmark::kMillisecond);

// One training step's gradient: batch 8 of 64x64 patches.
void BM_Backward(benchmark::State& state) {
  const auto params = EstimatorParams::Initialize(ConfigFor(static_cast<int>(state.range(0))), 1);
  const auto batch = Batch(8, 64);
  const Precision precision = state.range(1) ? Precision::kFloat : Precision::kDouble;
  for (auto _ : state) benchmark::DoNotOptimize(Backward(params, batch, precision));
}
BENCHMARK(BM_Backward)->ArgsProduct({{8, 16}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_AdamStep(benchmark::State& state) {
  auto params = EstimatorParams::Initialize(ConfigFor(16), 1);
  const std::vector<double> grad(params.size(), 1e-3);
  for (auto _ : state) AdamStep(params, grad, 1e-5);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(params.size()));
}
BENCHMARK(BM_AdamStep);

void BM_EstimateTiled(benchmark::State& state) {
  const auto params = EstimatorParams::Initialize(ConfigFor(8), 1);
  Prng rng(2);
  const Raster image = GenerateScene(512, 384, 1, rng);
  EstimateOptions options;
  options.tile = static_cast<int>(state.range(0));
  options.precision = Precision::kFloat;
  for (auto _ : state) benchmark::DoNotOptimize(Estimate(params, image, options));
}
BENCHMARK(BM_EstimateTiled)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sigmap
