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

#ifndef SIGMAP_ESTIMATOR_NETWORK_H_
#define SIGMAP_ESTIMATOR_NETWORK_H_

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "estimator/layers.h"
#include "sigmap/estimator.h"
#include "sigmap/raster.h"

namespace sigmap::nn {

inline constexpr double kInputOffset = 128.0;
inline constexpr double kInputScale = 1.0 / 32.0;

enum class LayerKind { kConv3x3, kDown, kUp };

struct ConvLayer {
  LayerKind kind;
  int cin;
  int cout;
  std::size_t weight_offset;
  std::size_t bias_offset;
  std::string name;
};

// Residual unit: conv1 -> relu -> conv2, added to the unit input.
struct ResidualUnit {
  int conv1;
  int conv2;
};

using Cascade = std::vector<ResidualUnit>;

// Layer indices and parameter offsets for one EstimatorConfig.
struct Architecture {
  std::vector<ConvLayer> layers;
  std::vector<TensorInfo> tensors;
  std::size_t parameter_count = 0;
  int head = -1;
  std::array<Cascade, 3> encoder;
  std::array<int, 3> down{};
  Cascade bottleneck;
  std::array<int, 3> up{};
  std::array<Cascade, 3> decoder;
  int tail = -1;
  std::size_t gain_offset = 0;
};

Architecture BuildArchitecture(const EstimatorConfig& config);

// Activations kept for the backward pass.
template <typename T>
struct Tape {
  std::vector<Mat<T>> cache;  // per layer: im2col matrix, or input for kUp
  std::vector<std::pair<int, int>> in_shape;  // per layer: (h, w) of its input
  std::vector<Mat<T>> pre_relu;  // per layer, only filled for conv1 of a unit
  Mat<T> z;  // pre-softplus output, 1 x hw
  Mat<T> input_mean;  // normalized channel mean of the input, 1 x hw
  int h = 0;
  int w = 0;
};

template <typename T>
class Network {
 public:
  explicit Network(const EstimatorConfig& config);

  const Architecture& arch() const { return arch_; }

  // `input` holds raw pixel values, c x (h * w) with h, w multiples of 8.
  // Returns the 1 x (h * w) sigma row. If `shapes` is non-null it receives
  // the (w, h) grid at levels 0..3.
  Mat<T> Forward(std::span<const T> params, const Tensor<T>& input, Tape<T>* tape,
                 std::vector<std::pair<int, int>>* shapes = nullptr) const;

  // Accumulates d(loss)/d(params) into grad given d(loss)/d(sigma).
  void Backward(std::span<const T> params, const Tape<T>& tape, const Mat<T>& d_sigma,
                std::span<T> grad) const;

 private:
  Tensor<T> Apply(int layer, std::span<const T> params, const Tensor<T>& x, Tape<T>* tape) const;
  Tensor<T> ApplyCascade(const Cascade& cascade, std::span<const T> params, Tensor<T> x,
                         Tape<T>* tape) const;
  // Returns dx; skips the input-gradient GEMM when need_dx is false.
  Tensor<T> Gradient(int layer, std::span<const T> params, const Tape<T>& tape,
                     const Tensor<T>& dy, std::span<T> grad, bool need_dx = true) const;
  Tensor<T> CascadeGradient(const Cascade& cascade, std::span<const T> params,
                            const Tape<T>& tape, Tensor<T> dy, std::span<T> grad) const;

  EstimatorConfig config_;
  Architecture arch_;
};

extern template class Network<float>;
extern template class Network<double>;

// Reflect-pads (mirror without edge repeat) on the right and bottom so both
// dimensions become multiples of `multiple`.
Raster PadToMultiple(const Raster& image, int multiple);

template <typename T>
Tensor<T> ToTensor(const Raster& image);

}  // namespace sigmap::nn

#endif  // SIGMAP_ESTIMATOR_NETWORK_H_
