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

#ifndef SIGMAP_SCENES_H_
#define SIGMAP_SCENES_H_

#include "sigmap/prng.h"
#include "sigmap/raster.h"

namespace sigmap {

// Procedural noise-free test scenes: a smooth background gradient overlaid
// with flat and shaded shapes, hard edges, periodic gratings and band-limited
// value-noise textures. Values stay within [8, 247] so neither clipping nor a
// zero-brightness fragment occurs on the clean image.
//
// Used as the built-in training/test corpus since no image datasets ship
// with the project.
Raster GenerateScene(int width, int height, int channels, Prng& rng);

// Flat field of a single value.
Raster FlatImage(int width, int height, int channels, double value);

}  // namespace sigmap

#endif  // SIGMAP_SCENES_H_
