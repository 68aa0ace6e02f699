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

#ifndef SIGMAP_PRNG_H_
#define SIGMAP_PRNG_H_

#include <array>
#include <cstdint>

namespace sigmap {

// Deterministic pseudo-random generator.
//
// Bit stream: xoshiro256** (Blackman & Vigna) whose 256-bit state is filled
// from the 64-bit seed by four successive SplitMix64 outputs.
//
// Uniform doubles take the top 53 bits of a 64-bit output: u = (x >> 11) * 2^-53,
// so u is in [0, 1).
//
// Gaussian samples use the basic Box-Muller transform on two uniforms
// (u1 in (0, 1], u2 in [0, 1)):
//   r = sqrt(-2 ln u1),  z0 = r cos(2 pi u2),  z1 = r sin(2 pi u2).
// z0 is returned first and z1 is cached for the next call.
//
// Split(stream) derives an independent child from the *seed* (not the current
// state) and a stream index, so children can be created in any order and
// handed to parallel workers while results stay reproducible:
//   child_seed = SplitMix64(seed ^ SplitMix64(stream + 0x9E3779B97F4A7C15)).
class Prng {
 public:
  explicit Prng(std::uint64_t seed = 0);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t NextU64();
  // Uniform in [0, 1).
  double Uniform();
  // Uniform integer in [0, n). n must be > 0. Unbiased (rejection sampling).
  std::uint64_t UniformInt(std::uint64_t n);
  // Standard normal N(0, 1).
  double StandardNormal();
  // N(mean, std^2). Throws ParameterError on negative or non-finite std.
  double Gaussian(double mean, double std);

  Prng Split(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> s_{};
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

// SplitMix64 finalizer; also usable as a generic 64-bit mixing function.
std::uint64_t SplitMix64(std::uint64_t& state);
std::uint64_t Mix64(std::uint64_t x);

// Free-function form of Prng::Gaussian.
double GaussianSample(Prng& rng, double mean, double std);

}  // namespace sigmap

#endif  // SIGMAP_PRNG_H_
