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

#ifndef SIGMAP_ESTIMATOR_LAYERS_H_
#define SIGMAP_ESTIMATOR_LAYERS_H_

#include <Eigen/Core>

#include <algorithm>
#include <cmath>

namespace sigmap::nn {

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using ConstMatMap = Eigen::Map<const Mat<T>>;
template <typename T>
using MatMap = Eigen::Map<Mat<T>>;
template <typename T>
using ConstVecMap = Eigen::Map<const Eigen::Matrix<T, Eigen::Dynamic, 1>>;
template <typename T>
using VecMap = Eigen::Map<Eigen::Matrix<T, Eigen::Dynamic, 1>>;

// Feature map: rows are channels, columns are pixels (row-major h x w).
template <typename T>
struct Tensor {
  Mat<T> m;
  int h = 0;
  int w = 0;

  int channels() const { return static_cast<int>(m.rows()); }
};

// 3x3 'same' convolution with edge-replicated padding, so a constant
// feature map stays constant up to the border. cols is (cin * 9) x (h * w).
template <typename T>
void Im2Col3x3(const Tensor<T>& x, Mat<T>& cols) {
  const int c = x.channels();
  const int h = x.h;
  const int w = x.w;
  cols.resize(c * 9, h * w);
  for (int ci = 0; ci < c; ++ci) {
    const T* src = x.m.row(ci).data();
    for (int ky = 0; ky < 3; ++ky) {
      for (int kx = 0; kx < 3; ++kx) {
        T* dst = cols.row(ci * 9 + ky * 3 + kx).data();
        const int dx = kx - 1;
        const int x_begin = std::max(0, -dx);
        const int x_end = std::max(x_begin, std::min(w, w - dx));
        for (int y = 0; y < h; ++y) {
          const T* row = src + std::clamp(y + ky - 1, 0, h - 1) * w;
          T* d = dst + y * w;
          for (int xx = 0; xx < x_begin; ++xx) d[xx] = row[std::clamp(xx + dx, 0, w - 1)];
          std::copy(row + x_begin + dx, row + x_end + dx, d + x_begin);
          for (int xx = x_end; xx < w; ++xx) d[xx] = row[std::clamp(xx + dx, 0, w - 1)];
        }
      }
    }
  }
}

// Adjoint of Im2Col3x3; padded taps accumulate into the edge pixels.
template <typename T>
void Col2Im3x3(const Mat<T>& cols, Tensor<T>& dx) {
  const int c = dx.channels();
  const int h = dx.h;
  const int w = dx.w;
  dx.m.setZero();
  for (int ci = 0; ci < c; ++ci) {
    T* dst = dx.m.row(ci).data();
    for (int ky = 0; ky < 3; ++ky) {
      for (int kx = 0; kx < 3; ++kx) {
        const T* src = cols.row(ci * 9 + ky * 3 + kx).data();
        const int ddx = kx - 1;
        const int x_begin = std::max(0, -ddx);
        const int x_end = std::max(x_begin, std::min(w, w - ddx));
        for (int y = 0; y < h; ++y) {
          T* row = dst + std::clamp(y + ky - 1, 0, h - 1) * w;
          const T* s = src + y * w;
          for (int xx = 0; xx < x_begin; ++xx) row[std::clamp(xx + ddx, 0, w - 1)] += s[xx];
          for (int xx = x_begin; xx < x_end; ++xx) row[xx + ddx] += s[xx];
          for (int xx = x_end; xx < w; ++xx) row[std::clamp(xx + ddx, 0, w - 1)] += s[xx];
        }
      }
    }
  }
}

// 2x2 stride-2 patches; non-overlapping, so this is a pure permutation.
template <typename T>
void Im2ColDown(const Tensor<T>& x, Mat<T>& cols) {
  const int c = x.channels();
  const int oh = x.h / 2;
  const int ow = x.w / 2;
  cols.resize(c * 4, oh * ow);
  for (int ci = 0; ci < c; ++ci) {
    const T* src = x.m.row(ci).data();
    for (int ky = 0; ky < 2; ++ky) {
      for (int kx = 0; kx < 2; ++kx) {
        T* dst = cols.row(ci * 4 + ky * 2 + kx).data();
        for (int y = 0; y < oh; ++y) {
          const T* s = src + (2 * y + ky) * x.w + kx;
          T* d = dst + y * ow;
          for (int xx = 0; xx < ow; ++xx) d[xx] = s[2 * xx];
        }
      }
    }
  }
}

template <typename T>
void Col2ImDown(const Mat<T>& cols, Tensor<T>& dx) {
  const int c = dx.channels();
  const int oh = dx.h / 2;
  const int ow = dx.w / 2;
  for (int ci = 0; ci < c; ++ci) {
    T* dst = dx.m.row(ci).data();
    for (int ky = 0; ky < 2; ++ky) {
      for (int kx = 0; kx < 2; ++kx) {
        const T* src = cols.row(ci * 4 + ky * 2 + kx).data();
        for (int y = 0; y < oh; ++y) {
          T* d = dst + (2 * y + ky) * dx.w + kx;
          const T* s = src + y * ow;
          for (int xx = 0; xx < ow; ++xx) d[2 * xx] = s[xx];
        }
      }
    }
  }
}

// Stride-2 transposed convolution with its 2x2 taps tied: each coarse
// pixel of `coarse` (cout x h*w) is copied to a 2x2 block of y.
template <typename T>
void UpsampleNearest(const Mat<T>& coarse, int h, int w, Tensor<T>& y) {
  const int cout = static_cast<int>(coarse.rows());
  y.h = 2 * h;
  y.w = 2 * w;
  y.m.resize(cout, y.h * y.w);
  for (int co = 0; co < cout; ++co) {
    const T* src = coarse.row(co).data();
    T* dst = y.m.row(co).data();
    for (int yy = 0; yy < y.h; ++yy) {
      const T* s = src + (yy / 2) * w;
      T* d = dst + yy * y.w;
      for (int xx = 0; xx < y.w; ++xx) d[xx] = s[xx / 2];
    }
  }
}

// Adjoint of UpsampleNearest: sums each 2x2 block of dy.
template <typename T>
void SumPool2x2(const Tensor<T>& dy, int h, int w, Mat<T>& coarse) {
  const int cout = dy.channels();
  coarse.setZero(cout, h * w);
  for (int co = 0; co < cout; ++co) {
    const T* src = dy.m.row(co).data();
    T* dst = coarse.row(co).data();
    for (int yy = 0; yy < dy.h; ++yy) {
      const T* s = src + yy * dy.w;
      T* d = dst + (yy / 2) * w;
      for (int xx = 0; xx < dy.w; ++xx) d[xx / 2] += s[xx];
    }
  }
}

template <typename T>
T Softplus(T z) {
  return z > T(0) ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

template <typename T>
T Sigmoid(T z) {
  if (z >= T(0)) return T(1) / (T(1) + std::exp(-z));
  const T e = std::exp(z);
  return e / (T(1) + e);
}

}  // namespace sigmap::nn

#endif  // SIGMAP_ESTIMATOR_LAYERS_H_
