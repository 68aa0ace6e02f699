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

#ifndef SIGMAP_IMAGE_IO_H_
#define SIGMAP_IMAGE_IO_H_

#include <filesystem>

#include "sigmap/raster.h"

namespace sigmap {

// Reads a grayscale or RGB image. The container is detected from the file's
// magic bytes: 8-bit PNG, binary PGM (P5), binary PPM (P6), or little-endian
// Portable FloatMap (Pf/PF), which keeps unquantized values.
// Throws IoError if the file cannot be opened and FormatError for unsupported
// bit depths, alpha channels, truncated data or implausible dimensions.
Raster LoadRaster(const std::filesystem::path& path);

// Writes the raster. The container follows the extension: ".png", ".pgm"
// (1 channel) and ".ppm" (3 channels) round to the nearest integer and clamp
// to [0, 255]; ".pfm" stores binary32 values without clamping.
void SaveRaster(const Raster& raster, const std::filesystem::path& path);

// Rounds and clamps every value to an 8-bit level; the quantization applied
// by SaveRaster, exposed for in-memory pipelines.
Raster Quantize8(const Raster& raster);

}  // namespace sigmap

#endif  // SIGMAP_IMAGE_IO_H_
