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

#include "estimator/network.h"
#include "sigmap/error.h"
#include "sigmap/estimator.h"

namespace sigmap {

void ValidateConfig(const EstimatorConfig& config) {
  if (config.channels.size() != EstimatorConfig::kLevels) {
    ThrowParameter("estimator needs exactly 3 channel widths");
  }
  for (int c : config.channels) {
    if (c <= 0) ThrowParameter("channel widths must be positive");
  }
  if (config.blocks < 1) ThrowParameter("residual blocks per cascade must be >= 1");
  if (config.input_channels != 1 && config.input_channels != 3) {
    ThrowParameter("estimator input channels must be 1 or 3");
  }
}

int ReceptiveRadius(const EstimatorConfig& config) {
  ValidateConfig(config);
  // Each 3x3 conv at stride j widens the radius by j; each 2x2 downsampling
  // conv or 2x upsample by the finer stride.
  const int convs_per_cascade = 2 * config.blocks;
  int radius = 1;  // head
  int stride = 1;
  for (int l = 0; l < 3; ++l) {
    radius += convs_per_cascade * stride;
    radius += stride;
    stride *= 2;
  }
  radius += convs_per_cascade * stride;
  for (int l = 2; l >= 0; --l) {
    stride /= 2;
    radius += stride;
    radius += convs_per_cascade * stride;
  }
  return radius + 1;  // tail
}

EstimatorParams EstimatorParams::Zeros(const EstimatorConfig& config) {
  const nn::Architecture arch = nn::BuildArchitecture(config);
  EstimatorParams p;
  p.config_ = config;
  p.tensors_ = arch.tensors;
  p.values_.assign(arch.parameter_count, 0.0);
  p.m_.assign(arch.parameter_count, 0.0);
  p.v_.assign(arch.parameter_count, 0.0);
  return p;
}

EstimatorParams EstimatorParams::Initialize(const EstimatorConfig& config, std::uint64_t seed) {
  EstimatorParams p = Zeros(config);
  Prng rng(seed);
  // Residual branches are damped so activations do not grow with depth.
  const int units = (2 * EstimatorConfig::kLevels + 1) * config.blocks;
  const double branch_scale = 1.0 / std::sqrt(static_cast<double>(units));
  for (const auto& t : p.tensors_) {
    if (t.fan_in == 0) continue;
    double bound = std::sqrt(3.0 / t.fan_in);
    if (t.name.ends_with(".conv2.weight")) bound *= branch_scale;
    if (t.name == "tail.weight") bound *= 0.1;
    for (std::size_t i = 0; i < t.size; ++i) {
      p.values_[t.offset + i] = bound * (2.0 * rng.Uniform() - 1.0);
    }
  }
  return p;
}

const TensorInfo& EstimatorParams::info(std::string_view name) const {
  for (const auto& t : tensors_) {
    if (t.name == name) return t;
  }
  ThrowParameter("no parameter tensor named '" + std::string(name) + "'");
}

std::span<double> EstimatorParams::tensor(std::string_view name) {
  const auto& t = info(name);
  return std::span<double>(values_).subspan(t.offset, t.size);
}

std::span<const double> EstimatorParams::tensor(std::string_view name) const {
  const auto& t = info(name);
  return std::span<const double>(values_).subspan(t.offset, t.size);
}

double LossMse(const SigmaMap& prediction, const SigmaMap& target) {
  if (!SameShape(prediction, target)) ThrowDimension("prediction and target differ in shape");
  const auto a = prediction.data();
  const auto b = target.data();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return acc / static_cast<double>(a.size());
}

void AdamStep(EstimatorParams& params, std::span<const double> gradients, double lr) {
  if (gradients.size() != params.size()) ThrowDimension("gradient size does not match parameters");
  if (!std::isfinite(lr) || lr < 0.0) ThrowParameter("learning rate must be finite and >= 0");
  for (double g : gradients) {
    if (!std::isfinite(g)) throw NumericalError("non-finite gradient passed to Adam");
  }
  const AdamConfig& a = params.adam();
  const std::int64_t t = params.iteration() + 1;
  const double c1 = 1.0 - std::pow(a.beta1, static_cast<double>(t));
  const double c2 = 1.0 - std::pow(a.beta2, static_cast<double>(t));
  auto w = params.values();
  auto m = params.first_moment();
  auto v = params.second_moment();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double g = gradients[i];
    m[i] = a.beta1 * m[i] + (1.0 - a.beta1) * g;
    v[i] = a.beta2 * v[i] + (1.0 - a.beta2) * g * g;
    const double m_hat = m[i] / c1;
    const double v_hat = v[i] / c2;
    w[i] -= lr * m_hat / (std::sqrt(v_hat) + a.epsilon);
  }
  params.set_iteration(t);
}

int TrainSchedule::StageBoundary() const {
  return static_cast<int>(std::lround(total_iterations * stage1_fraction));
}

double TrainSchedule::LearningRate(int iteration) const {
  return iteration < StageBoundary() ? lr_stage1 : lr_stage2;
}

void ValidateSchedule(const TrainSchedule& s) {
  if (s.total_iterations < 0) ThrowParameter("total iterations must be >= 0");
  if (!(s.lr_stage1 > 0.0) || !(s.lr_stage2 > 0.0)) ThrowParameter("learning rates must be > 0");
  if (!(s.lr_stage2 < s.lr_stage1)) ThrowParameter("stage-2 learning rate must be below stage 1");
  if (!(s.stage1_fraction >= 0.0 && s.stage1_fraction <= 1.0)) {
    ThrowParameter("stage-1 fraction must be in [0, 1]");
  }
  if (s.batch < 1) ThrowParameter("batch size must be >= 1");
}

}  // namespace sigmap
