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

#include "estimator/network.h"

#include <string>

#include "sigmap/error.h"

namespace sigmap::nn {
namespace {

class ArchitectureBuilder {
 public:
  explicit ArchitectureBuilder(Architecture& arch) : arch_(arch) {}

  int AddLayer(LayerKind kind, int cin, int cout, const std::string& name) {
    ConvLayer layer{kind, cin, cout, 0, 0, name};
    std::vector<int> shape;
    int fan_in = 0;
    switch (kind) {
      case LayerKind::kConv3x3:
        shape = {cout, cin, 3, 3};
        fan_in = cin * 9;
        break;
      case LayerKind::kDown:
        shape = {cout, cin, 2, 2};
        fan_in = cin * 4;
        break;
      case LayerKind::kUp:
        // One tap shared by the four output phases.
        shape = {cout, cin};
        fan_in = cin;
        break;
    }
    layer.weight_offset = AddTensor(name + ".weight", shape, fan_in);
    layer.bias_offset = AddTensor(name + ".bias", {cout}, 0);
    arch_.layers.push_back(layer);
    return static_cast<int>(arch_.layers.size()) - 1;
  }

  Cascade AddCascade(int channels, int blocks, const std::string& prefix) {
    Cascade cascade;
    for (int b = 0; b < blocks; ++b) {
      const std::string unit = prefix + ".block" + std::to_string(b);
      const int c1 = AddLayer(LayerKind::kConv3x3, channels, channels, unit + ".conv1");
      const int c2 = AddLayer(LayerKind::kConv3x3, channels, channels, unit + ".conv2");
      cascade.push_back({c1, c2});
    }
    return cascade;
  }

  std::size_t AddTensor(const std::string& name, std::vector<int> shape, int fan_in) {
    std::size_t size = 1;
    for (int d : shape) size *= static_cast<std::size_t>(d);
    TensorInfo info{name, std::move(shape), arch_.parameter_count, size, fan_in};
    arch_.parameter_count += size;
    arch_.tensors.push_back(std::move(info));
    return arch_.tensors.back().offset;
  }

 private:
  Architecture& arch_;
};

}  // namespace

Architecture BuildArchitecture(const EstimatorConfig& config) {
  ValidateConfig(config);
  Architecture arch;
  ArchitectureBuilder b(arch);
  const auto& ch = config.channels;
  const std::array<int, 4> width = {ch[0], ch[1], ch[2], ch[2]};
  arch.head = b.AddLayer(LayerKind::kConv3x3, config.input_channels, width[0], "head");
  for (int l = 0; l < 3; ++l) {
    arch.encoder[l] = b.AddCascade(width[l], config.blocks, "enc" + std::to_string(l));
    arch.down[l] = b.AddLayer(LayerKind::kDown, width[l], width[l + 1], "down" + std::to_string(l));
  }
  arch.bottleneck = b.AddCascade(width[3], config.blocks, "body");
  for (int l = 2; l >= 0; --l) {
    arch.up[l] = b.AddLayer(LayerKind::kUp, width[l + 1], width[l], "up" + std::to_string(l));
    arch.decoder[l] = b.AddCascade(width[l], config.blocks, "dec" + std::to_string(l));
  }
  arch.tail = b.AddLayer(LayerKind::kConv3x3, width[0], 1, "tail");
  arch.gain_offset = b.AddTensor("skip.gain", {1}, 0);
  return arch;
}

template <typename T>
Network<T>::Network(const EstimatorConfig& config)
    : config_(config), arch_(BuildArchitecture(config)) {}

template <typename T>
Tensor<T> Network<T>::Apply(int index, std::span<const T> params, const Tensor<T>& x,
                            Tape<T>* tape) const {
  const ConvLayer& layer = arch_.layers[index];
  const ConstVecMap<T> bias(params.data() + layer.bias_offset, layer.cout);
  Tensor<T> y;
  Mat<T> local;
  Mat<T>& cache = tape ? tape->cache[index] : local;
  if (tape) tape->in_shape[index] = {x.h, x.w};
  switch (layer.kind) {
    case LayerKind::kConv3x3: {
      const ConstMatMap<T> weight(params.data() + layer.weight_offset, layer.cout, layer.cin * 9);
      Im2Col3x3(x, cache);
      y.h = x.h;
      y.w = x.w;
      y.m.noalias() = weight * cache;
      break;
    }
    case LayerKind::kDown: {
      const ConstMatMap<T> weight(params.data() + layer.weight_offset, layer.cout, layer.cin * 4);
      Im2ColDown(x, cache);
      y.h = x.h / 2;
      y.w = x.w / 2;
      y.m.noalias() = weight * cache;
      break;
    }
    case LayerKind::kUp: {
      const ConstMatMap<T> weight(params.data() + layer.weight_offset, layer.cout, layer.cin);
      Mat<T> coarse;
      coarse.noalias() = weight * x.m;
      UpsampleNearest(coarse, x.h, x.w, y);
      if (tape) cache = x.m;
      break;
    }
  }
  y.m.colwise() += bias;
  if (!y.m.allFinite()) {
    throw NumericalError("non-finite activations in layer '" + layer.name + "'");
  }
  return y;
}

template <typename T>
Tensor<T> Network<T>::ApplyCascade(const Cascade& cascade, std::span<const T> params,
                                   Tensor<T> x, Tape<T>* tape) const {
  for (const auto& unit : cascade) {
    Tensor<T> a = Apply(unit.conv1, params, x, tape);
    if (tape) tape->pre_relu[unit.conv1] = a.m;
    a.m = a.m.cwiseMax(T(0));
    const Tensor<T> r = Apply(unit.conv2, params, a, tape);
    x.m += r.m;
  }
  return x;
}

template <typename T>
Mat<T> Network<T>::Forward(std::span<const T> params, const Tensor<T>& input, Tape<T>* tape,
                           std::vector<std::pair<int, int>>* shapes) const {
  if (input.channels() != config_.input_channels) {
    throw DimensionError("estimator expects " + std::to_string(config_.input_channels) +
                         "-channel input, got " + std::to_string(input.channels()));
  }
  if (input.h % 8 != 0 || input.w % 8 != 0) {
    throw DimensionError("network input dimensions must be multiples of 8");
  }
  if (params.size() != arch_.parameter_count) {
    throw DimensionError("parameter vector does not match the network configuration");
  }
  if (tape) {
    tape->cache.assign(arch_.layers.size(), Mat<T>());
    tape->in_shape.assign(arch_.layers.size(), {0, 0});
    tape->pre_relu.assign(arch_.layers.size(), Mat<T>());
    tape->h = input.h;
    tape->w = input.w;
  }
  Tensor<T> x0;
  x0.h = input.h;
  x0.w = input.w;
  x0.m = (input.m.array() - T(kInputOffset)) * T(kInputScale);

  Tensor<T> cur = Apply(arch_.head, params, x0, tape);
  std::array<Tensor<T>, 3> skips;
  if (shapes) shapes->clear();
  for (int l = 0; l < 3; ++l) {
    cur = ApplyCascade(arch_.encoder[l], params, std::move(cur), tape);
    if (shapes) shapes->emplace_back(cur.w, cur.h);
    skips[l] = cur;
    cur = Apply(arch_.down[l], params, cur, tape);
  }
  cur = ApplyCascade(arch_.bottleneck, params, std::move(cur), tape);
  if (shapes) shapes->emplace_back(cur.w, cur.h);
  for (int l = 2; l >= 0; --l) {
    cur = Apply(arch_.up[l], params, cur, tape);
    cur.m += skips[l].m;
    cur = ApplyCascade(arch_.decoder[l], params, std::move(cur), tape);
  }
  Tensor<T> out = Apply(arch_.tail, params, cur, tape);

  const Mat<T> mean = x0.m.colwise().mean();
  const T gain = params[arch_.gain_offset];
  Mat<T> z = out.m + gain * mean;
  Mat<T> sigma = z.unaryExpr([](T v) { return T(kOutputScale) * Softplus(v); });
  if (tape) {
    tape->z = std::move(z);
    tape->input_mean = mean;
  }
  return sigma;
}

template <typename T>
Tensor<T> Network<T>::Gradient(int index, std::span<const T> params, const Tape<T>& tape,
                               const Tensor<T>& dy, std::span<T> grad, bool need_dx) const {
  const ConvLayer& layer = arch_.layers[index];
  const Mat<T>& cache = tape.cache[index];
  VecMap<T> dbias(grad.data() + layer.bias_offset, layer.cout);
  dbias += dy.m.rowwise().sum();
  Tensor<T> dx;
  dx.h = tape.in_shape[index].first;
  dx.w = tape.in_shape[index].second;
  switch (layer.kind) {
    case LayerKind::kConv3x3: {
      const ConstMatMap<T> weight(params.data() + layer.weight_offset, layer.cout, layer.cin * 9);
      MatMap<T> dweight(grad.data() + layer.weight_offset, layer.cout, layer.cin * 9);
      dweight.noalias() += dy.m * cache.transpose();
      if (need_dx) {
        const Mat<T> dcols = weight.transpose() * dy.m;
        dx.m.resize(layer.cin, dx.h * dx.w);
        Col2Im3x3(dcols, dx);
      }
      break;
    }
    case LayerKind::kDown: {
      const ConstMatMap<T> weight(params.data() + layer.weight_offset, layer.cout, layer.cin * 4);
      MatMap<T> dweight(grad.data() + layer.weight_offset, layer.cout, layer.cin * 4);
      dweight.noalias() += dy.m * cache.transpose();
      if (need_dx) {
        const Mat<T> dcols = weight.transpose() * dy.m;
        dx.m.resize(layer.cin, dx.h * dx.w);
        Col2ImDown(dcols, dx);
      }
      break;
    }
    case LayerKind::kUp: {
      const ConstMatMap<T> weight(params.data() + layer.weight_offset, layer.cout, layer.cin);
      MatMap<T> dweight(grad.data() + layer.weight_offset, layer.cout, layer.cin);
      Mat<T> coarse;
      SumPool2x2(dy, dx.h, dx.w, coarse);
      dweight.noalias() += coarse * cache.transpose();
      if (need_dx) dx.m.noalias() = weight.transpose() * coarse;
      break;
    }
  }
  return dx;
}

template <typename T>
Tensor<T> Network<T>::CascadeGradient(const Cascade& cascade, std::span<const T> params,
                                      const Tape<T>& tape, Tensor<T> dy,
                                      std::span<T> grad) const {
  for (auto it = cascade.rbegin(); it != cascade.rend(); ++it) {
    Tensor<T> da = Gradient(it->conv2, params, tape, dy, grad);
    const Mat<T>& pre = tape.pre_relu[it->conv1];
    da.m = (pre.array() > T(0)).select(da.m, T(0));
    const Tensor<T> dx = Gradient(it->conv1, params, tape, da, grad);
    dy.m += dx.m;
  }
  return dy;
}

template <typename T>
void Network<T>::Backward(std::span<const T> params, const Tape<T>& tape, const Mat<T>& d_sigma,
                          std::span<T> grad) const {
  if (grad.size() != arch_.parameter_count) {
    throw DimensionError("gradient buffer does not match the network configuration");
  }
  Tensor<T> dz;
  dz.h = tape.h;
  dz.w = tape.w;
  dz.m = d_sigma.array() * T(kOutputScale) * tape.z.unaryExpr([](T v) { return Sigmoid(v); }).array();
  grad[arch_.gain_offset] += (dz.m.array() * tape.input_mean.array()).sum();

  Tensor<T> cur = Gradient(arch_.tail, params, tape, dz, grad);
  std::array<Tensor<T>, 3> dskips;
  for (int l = 0; l < 3; ++l) {
    cur = CascadeGradient(arch_.decoder[l], params, tape, std::move(cur), grad);
    dskips[l] = cur;
    cur = Gradient(arch_.up[l], params, tape, cur, grad);
  }
  cur = CascadeGradient(arch_.bottleneck, params, tape, std::move(cur), grad);
  for (int l = 2; l >= 0; --l) {
    cur = Gradient(arch_.down[l], params, tape, cur, grad);
    cur.m += dskips[l].m;
    cur = CascadeGradient(arch_.encoder[l], params, tape, std::move(cur), grad);
  }
  Gradient(arch_.head, params, tape, cur, grad, /*need_dx=*/false);
}

template class Network<float>;
template class Network<double>;

}  // namespace sigmap::nn
