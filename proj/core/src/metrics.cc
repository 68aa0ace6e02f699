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

#include "sigmap/metrics.h"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "sigmap/error.h"

namespace sigmap {
namespace {

constexpr int kWindow = 11;
constexpr double kWindowSigma = 1.5;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

std::array<double, kWindow> GaussianTaps() {
  std::array<double, kWindow> taps;
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kWindow / 2;
    taps[i] = std::exp(-d * d / (2.0 * kWindowSigma * kWindowSigma));
    sum += taps[i];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

// Separable 'valid' filtering of a w x h plane.
std::vector<double> FilterValid(const std::vector<double>& plane, int w, int h,
                                const std::array<double, kWindow>& taps) {
  const int ow = w - kWindow + 1;
  const int oh = h - kWindow + 1;
  std::vector<double> rows(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) acc += taps[k] * plane[static_cast<std::size_t>(y) * w + x + k];
      rows[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) acc += taps[k] * rows[static_cast<std::size_t>(y + k) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

double SsimPlane(const Raster& a, const Raster& b, int c) {
  const int w = a.width();
  const int h = a.height();
  const std::size_t n = a.pixel_count();
  std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = a.data()[i * a.channels() + c];
    y[i] = b.data()[i * b.channels() + c];
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  static const auto taps = GaussianTaps();
  const auto mx = FilterValid(x, w, h, taps);
  const auto my = FilterValid(y, w, h, taps);
  const auto exx = FilterValid(xx, w, h, taps);
  const auto eyy = FilterValid(yy, w, h, taps);
  const auto exy = FilterValid(xy, w, h, taps);
  double acc = 0.0;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double mxy = mx[i] * my[i];
    const double vx = exx[i] - mx[i] * mx[i];
    const double vy = eyy[i] - my[i] * my[i];
    const double cov = exy[i] - mxy;
    const double num = (2.0 * mxy + kC1) * (2.0 * cov + kC2);
    const double den = (mx[i] * mx[i] + my[i] * my[i] + kC1) * (vx + vy + kC2);
    acc += num / den;
  }
  return acc / static_cast<double>(mx.size());
}

void CheckSameShape(const Raster& a, const Raster& b) {
  if (a.width() != b.width() || a.height() != b.height() || a.channels() != b.channels()) {
    ThrowDimension("images differ in shape");
  }
}

}  // namespace

double RelativeMapError(const SigmaMap& estimate, const SigmaMap& truth) {
  if (!SameShape(estimate, truth)) ThrowDimension("estimate and truth maps differ in shape");
  double diff = 0.0;
  double norm = 0.0;
  const auto e = estimate.data();
  const auto t = truth.data();
  for (std::size_t i = 0; i < t.size(); ++i) {
    diff += (e[i] - t[i]) * (e[i] - t[i]);
    norm += t[i] * t[i];
  }
  if (!(norm > 0.0)) throw DegenerateInputError("truth sigma-map has zero norm");
  return std::sqrt(diff) / std::sqrt(norm);
}

double RelativeMapError(std::span<const SigmaMap> estimates, std::span<const SigmaMap> truths,
                        MapErrorAggregation aggregation) {
  if (estimates.size() != truths.size()) {
    ThrowDimension("estimate and truth lists differ in length");
  }
  if (truths.empty()) ThrowParameter("relative map error needs at least one pair");
  if (aggregation == MapErrorAggregation::kMeanOfRatios) {
    double acc = 0.0;
    for (std::size_t i = 0; i < truths.size(); ++i) {
      acc += RelativeMapError(estimates[i], truths[i]);
    }
    return acc / static_cast<double>(truths.size());
  }
  double diff = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    if (!SameShape(estimates[i], truths[i])) ThrowDimension("estimate and truth maps differ in shape");
    const auto e = estimates[i].data();
    const auto t = truths[i].data();
    for (std::size_t j = 0; j < t.size(); ++j) {
      diff += (e[j] - t[j]) * (e[j] - t[j]);
      norm += t[j] * t[j];
    }
  }
  if (!(norm > 0.0)) throw DegenerateInputError("truth sigma-maps have zero norm");
  return std::sqrt(diff) / std::sqrt(norm);
}

double RelativeStdError(std::span<const double> estimates, double sigma_true) {
  if (!(sigma_true > 0.0) || !std::isfinite(sigma_true)) {
    ThrowParameter("true sigma must be finite and > 0");
  }
  if (estimates.empty()) ThrowParameter("relative std error needs at least one estimate");
  double acc = 0.0;
  for (double e : estimates) acc += (e - sigma_true) * (e - sigma_true);
  return std::sqrt(acc) / (static_cast<double>(estimates.size()) * sigma_true);
}

double Psnr(const Raster& reference, const Raster& test) {
  CheckSameShape(reference, test);
  const auto a = reference.data();
  const auto b = test.data();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  const double mse = acc / static_cast<double>(a.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double Ssim(const Raster& reference, const Raster& test) {
  CheckSameShape(reference, test);
  if (reference.width() < kWindow || reference.height() < kWindow) {
    ThrowDimension("SSIM needs images of at least 11x11 pixels");
  }
  double acc = 0.0;
  for (int c = 0; c < reference.channels(); ++c) acc += SsimPlane(reference, test, c);
  return acc / reference.channels();
}

bool CheckThreshold(double eps_m) { return eps_m < kMapErrorThreshold; }

}  // namespace sigmap
