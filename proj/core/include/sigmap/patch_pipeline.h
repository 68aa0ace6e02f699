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

#ifndef SIGMAP_PATCH_PIPELINE_H_
#define SIGMAP_PATCH_PIPELINE_H_

#include <filesystem>
#include <string>
#include <vector>

#include "sigmap/noise_synth.h"
#include "sigmap/prng.h"
#include "sigmap/raster.h"

namespace sigmap {

struct TrainingSample {
  Raster patch;
  SigmaMap target;
  bool clipped = false;
  // The mean variance drawn for this sample; target.MeanVariance() equals it
  // up to rounding.
  double sigma_av_sq = 0.0;
};

// Reads a corpus manifest: one image path per line, blank lines and lines
// starting with '#' ignored. Relative paths resolve against the manifest's
// directory.
std::vector<std::filesystem::path> ReadManifest(const std::filesystem::path& manifest);

// Box-filter downscale by an integer factor (averaging factor x factor cells).
Raster DownscaleBox(const Raster& image, int factor);

// In-memory training images.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Raster> images, std::vector<std::string> names = {});

  // Loads every manifest entry, optionally box-downscaled.
  static Corpus FromManifest(const std::filesystem::path& manifest, int downscale = 1);

  std::size_t size() const { return images_.size(); }
  bool empty() const { return images_.empty(); }
  const Raster& image(std::size_t i) const { return images_[i]; }
  const std::string& name(std::size_t i) const { return names_[i]; }

  // Throws DimensionError naming the first image smaller than P x P.
  void RequireMinSize(int patch) const;

 private:
  std::vector<Raster> images_;
  std::vector<std::string> names_;
};

// Mean absolute horizontal and vertical neighbor difference over all
// channels; zero for a constant image.
double DetailScore(const Raster& image);

// Draws three uniformly placed P x P crops and returns the one with the
// highest DetailScore; the earliest draw wins ties. Each origin is drawn as
// x0 = UniformInt(W - P + 1), then y0 = UniformInt(H - P + 1).
Raster SelectFragment(const Raster& image, int patch, Prng& rng);

// Dihedral transform index t in [0, 8): rotate by (t & 3) quarter turns
// counter-clockwise, then mirror horizontally if (t & 4).
Raster ApplyDihedral(const Raster& square, int transform);
// One of the 8 transforms, chosen uniformly.
Raster Augment(const Raster& fragment, Prng& rng);

enum class BrightnessSource {
  // B is the brightness of the noised fragment itself.
  kSameFragment,
  // B comes from an independently drawn fragment of another random image.
  kCrossImage,
};

struct PipelineOptions {
  int patch = 128;
  // 1 converts fragments to grayscale (channel mean); 3 keeps color.
  int channels = 1;
  BrightnessSource brightness = BrightnessSource::kSameFragment;
  // Exactly half of each batch is clipped; otherwise NoiseSpec::clip applies
  // to all samples.
  bool half_clipped = true;
};

// Assembles one minibatch. Each sample uses a child generator split from a
// per-batch seed drawn from rng, so samples are independent of evaluation
// order.
std::vector<TrainingSample> MakeMinibatch(const Corpus& corpus, int batch,
                                          const PipelineOptions& options,
                                          const NoiseSpec& spec, Prng& rng);

}  // namespace sigmap

#endif  // SIGMAP_PATCH_PIPELINE_H_
