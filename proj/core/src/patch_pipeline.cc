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

#include "sigmap/patch_pipeline.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "sigmap/error.h"
#include "sigmap/image_io.h"

namespace sigmap {
namespace {

Raster RandomCrop(const Raster& image, int patch, Prng& rng) {
  const auto x0 = static_cast<int>(rng.UniformInt(image.width() - patch + 1));
  const auto y0 = static_cast<int>(rng.UniformInt(image.height() - patch + 1));
  return image.Crop(x0, y0, patch, patch);
}

double Mean(const Raster& r) {
  double acc = 0.0;
  for (double v : r.data()) acc += v;
  return acc / static_cast<double>(r.data().size());
}

Raster ToChannels(const Raster& r, int channels) {
  if (r.channels() == channels) return r;
  if (channels == 1) return Brightness(r);
  Raster out(r.width(), r.height(), 3);
  for (int y = 0; y < r.height(); ++y) {
    for (int x = 0; x < r.width(); ++x) {
      for (int k = 0; k < 3; ++k) out.at(x, y, k) = r.at(x, y);
    }
  }
  return out;
}

}  // namespace

std::vector<std::filesystem::path> ReadManifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open manifest " + manifest.string());
  std::vector<std::filesystem::path> paths;
  const auto base = manifest.parent_path();
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::filesystem::path p = line.substr(first, last - first + 1);
    paths.push_back(p.is_absolute() ? p : base / p);
  }
  return paths;
}

Raster DownscaleBox(const Raster& image, int factor) {
  if (factor < 1) ThrowParameter("downscale factor must be >= 1");
  if (factor == 1) return image;
  const int w = image.width() / factor;
  const int h = image.height() / factor;
  if (w == 0 || h == 0) ThrowDimension("image too small to downscale by " + std::to_string(factor));
  Raster out(w, h, image.channels());
  const double norm = 1.0 / (factor * factor);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int k = 0; k < image.channels(); ++k) {
        double acc = 0.0;
        for (int dy = 0; dy < factor; ++dy) {
          for (int dx = 0; dx < factor; ++dx) {
            acc += image.at(x * factor + dx, y * factor + dy, k);
          }
        }
        out.at(x, y, k) = acc * norm;
      }
    }
  }
  return out;
}

Corpus::Corpus(std::vector<Raster> images, std::vector<std::string> names)
    : images_(std::move(images)), names_(std::move(names)) {
  names_.resize(images_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) names_[i] = "image" + std::to_string(i);
  }
}

Corpus Corpus::FromManifest(const std::filesystem::path& manifest, int downscale) {
  std::vector<Raster> images;
  std::vector<std::string> names;
  for (const auto& path : ReadManifest(manifest)) {
    images.push_back(DownscaleBox(LoadRaster(path), downscale));
    names.push_back(path.stem().string());
  }
  return Corpus(std::move(images), std::move(names));
}

void Corpus::RequireMinSize(int patch) const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i].width() < patch || images_[i].height() < patch) {
      ThrowDimension("corpus image '" + names_[i] + "' is smaller than " +
                     std::to_string(patch) + "x" + std::to_string(patch));
    }
  }
}

double DetailScore(const Raster& image) {
  const int w = image.width();
  const int h = image.height();
  const int c = image.channels();
  double acc = 0.0;
  std::size_t count = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int k = 0; k < c; ++k) {
        const double v = image.at(x, y, k);
        if (x + 1 < w) {
          acc += std::abs(image.at(x + 1, y, k) - v);
          ++count;
        }
        if (y + 1 < h) {
          acc += std::abs(image.at(x, y + 1, k) - v);
          ++count;
        }
      }
    }
  }
  return count == 0 ? 0.0 : acc / static_cast<double>(count);
}

Raster SelectFragment(const Raster& image, int patch, Prng& rng) {
  if (patch <= 0) ThrowParameter("fragment size must be positive");
  if (image.width() < patch || image.height() < patch) {
    ThrowDimension("image " + std::to_string(image.width()) + "x" +
                   std::to_string(image.height()) + " is smaller than fragment size " +
                   std::to_string(patch));
  }
  Raster best;
  double best_score = -1.0;
  for (int draw = 0; draw < 3; ++draw) {
    Raster crop = RandomCrop(image, patch, rng);
    const double score = DetailScore(crop);
    if (score > best_score) {
      best_score = score;
      best = std::move(crop);
    }
  }
  return best;
}

Raster ApplyDihedral(const Raster& square, int transform) {
  if (square.width() != square.height()) ThrowDimension("augmentation needs a square fragment");
  if (transform < 0 || transform > 7) ThrowParameter("dihedral index must be in [0, 8)");
  const int n = square.width();
  const int rot = transform & 3;
  const bool mirror = (transform & 4) != 0;
  Raster out(n, n, square.channels());
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      // Source coordinates of output pixel (x, y) under a CCW rotation.
      int sx = x;
      int sy = y;
      if (mirror) sx = n - 1 - sx;
      for (int r = 0; r < rot; ++r) {
        const int tx = sx;
        sx = n - 1 - sy;
        sy = tx;
      }
      for (int k = 0; k < square.channels(); ++k) out.at(x, y, k) = square.at(sx, sy, k);
    }
  }
  return out;
}

Raster Augment(const Raster& fragment, Prng& rng) {
  return ApplyDihedral(fragment, static_cast<int>(rng.UniformInt(8)));
}

std::vector<TrainingSample> MakeMinibatch(const Corpus& corpus, int batch,
                                          const PipelineOptions& options,
                                          const NoiseSpec& spec, Prng& rng) {
  if (corpus.empty()) ThrowParameter("training corpus is empty");
  if (batch < 1) ThrowParameter("batch size must be >= 1");
  if (options.half_clipped && (batch < 2 || batch % 2 != 0)) {
    ThrowParameter("batch must be even and >= 2 when half of it is clipped");
  }
  if (options.channels != 1 && options.channels != 3) {
    ThrowParameter("pipeline channels must be 1 or 3");
  }
  corpus.RequireMinSize(options.patch);

  const std::uint64_t batch_seed = rng.NextU64();
  std::vector<bool> clip_flags(batch, spec.clip);
  if (options.half_clipped) {
    std::fill(clip_flags.begin(), clip_flags.end(), false);
    std::fill(clip_flags.begin(), clip_flags.begin() + batch / 2, true);
    for (int i = batch - 1; i > 0; --i) {
      const auto j = static_cast<int>(rng.UniformInt(i + 1));
      const bool tmp = clip_flags[i];
      clip_flags[i] = clip_flags[j];
      clip_flags[j] = tmp;
    }
  }

  const Prng batch_rng(batch_seed);
  std::vector<TrainingSample> samples;
  samples.reserve(batch);
  for (int i = 0; i < batch; ++i) {
    Prng srng = batch_rng.Split(static_cast<std::uint64_t>(i));
    Raster fragment;
    Raster brightness;
    // All-black fragments have no defined brightness scaling; redraw a few times.
    for (int attempt = 0;; ++attempt) {
      const Raster& image = corpus.image(srng.UniformInt(corpus.size()));
      fragment = ToChannels(Augment(SelectFragment(image, options.patch, srng), srng),
                            options.channels);
      if (options.brightness == BrightnessSource::kCrossImage) {
        const Raster& other = corpus.image(srng.UniformInt(corpus.size()));
        brightness = Brightness(Augment(RandomCrop(other, options.patch, srng), srng));
      } else {
        brightness = Brightness(fragment);
      }
      if (Mean(brightness) > 0.0) break;
      if (attempt == 9) throw DegenerateInputError("corpus yields only all-zero fragments");
    }
    TrainingSample s;
    s.sigma_av_sq = SampleMeanVariance(srng, spec.half_normal_scale);
    s.target = SigmaMapFromBrightness(brightness, s.sigma_av_sq);
    s.clipped = clip_flags[i];
    NoiseSpec sample_spec = spec;
    sample_spec.clip = s.clipped;
    s.patch = ApplyNoise(fragment, s.target, sample_spec, srng);
    samples.push_back(std::move(s));
  }
  return samples;
}

}  // namespace sigmap
