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

#include <cmath>
#include <string>
#include <vector>

#include "estimator/network.h"
#include "sigmap/error.h"
#include "sigmap/estimator.h"

namespace sigmap {
namespace {

template <typename T>
Gradients BackwardImpl(const EstimatorParams& params, std::span<const TrainingSample> batch) {
  if (batch.empty()) ThrowParameter("backward needs a non-empty batch");
  const nn::Network<T> net(params.config());
  const std::vector<T> p(params.values().begin(), params.values().end());
  std::vector<T> g(p.size(), T(0));
  double loss = 0.0;
  const double batch_size = static_cast<double>(batch.size());
  nn::Tape<T> tape;
  for (const auto& sample : batch) {
    if (!SameShape(sample.patch, sample.target)) {
      ThrowDimension("training patch and target differ in shape");
    }
    const nn::Tensor<T> input = nn::ToTensor<T>(sample.patch);
    const nn::Mat<T> sigma = net.Forward(p, input, &tape);
    const auto target = sample.target.data();
    const double n = static_cast<double>(target.size());
    nn::Mat<T> d_sigma(1, sigma.cols());
    double sq = 0.0;
    for (Eigen::Index i = 0; i < sigma.cols(); ++i) {
      const double diff = static_cast<double>(sigma(0, i)) - target[static_cast<std::size_t>(i)];
      sq += diff * diff;
      d_sigma(0, i) = static_cast<T>(2.0 * diff / (n * batch_size));
    }
    loss += sq / n;
    net.Backward(p, tape, d_sigma, g);
  }
  Gradients out;
  out.loss = loss / batch_size;
  out.values.assign(g.begin(), g.end());
  for (double v : out.values) {
    if (!std::isfinite(v)) throw NumericalError("non-finite gradient in backward pass");
  }
  return out;
}

}  // namespace

Gradients Backward(const EstimatorParams& params, std::span<const TrainingSample> batch,
                   Precision precision) {
  return precision == Precision::kFloat ? BackwardImpl<float>(params, batch)
                                        : BackwardImpl<double>(params, batch);
}

EstimatorParams Train(const Corpus& corpus, const EstimatorConfig& config,
                      const TrainSchedule& schedule, const NoiseSpec& spec, Prng& rng,
                      const TrainOptions& options, const EstimatorParams* initial) {
  ValidateConfig(config);
  ValidateSchedule(schedule);
  if (options.pipeline.patch % 8 != 0) ThrowParameter("training patch size must be a multiple of 8");
  EstimatorParams params = initial ? *initial : EstimatorParams::Initialize(config, rng.NextU64());
  if (!(params.config() == config)) {
    ThrowParameter("initial parameters were built for a different configuration");
  }
  PipelineOptions pipeline = options.pipeline;
  pipeline.channels = config.input_channels;
  for (int it = static_cast<int>(params.iteration()); it < schedule.total_iterations; ++it) {
    const auto batch = MakeMinibatch(corpus, schedule.batch, pipeline, spec, rng);
    const Gradients grads = Backward(params, batch, options.precision);
    const double lr = schedule.LearningRate(it);
    AdamStep(params, grads.values, lr);
    if (options.on_iteration) options.on_iteration(it + 1, grads.loss, lr);
    if (options.checkpoint_every > 0 && (it + 1) % options.checkpoint_every == 0 &&
        options.on_checkpoint) {
      options.on_checkpoint(params);
    }
  }
  return params;
}

}  // namespace sigmap
