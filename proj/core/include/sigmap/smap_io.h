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

#ifndef SIGMAP_SMAP_IO_H_
#define SIGMAP_SMAP_IO_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sigmap/raster.h"

namespace sigmap {

// SMAP sigma-map container, all integers little-endian:
//
//   offset  size  field
//   0       4     magic "SMAP"
//   4       1     format version (1)
//   5       4     width  (uint32)
//   9       4     height (uint32)
//   13      4*N   N = width*height IEEE-754 binary32 values, row-major
//
// Values are stored at 32-bit precision; a map whose values are already
// float-representable round-trips bit-exactly.
inline constexpr std::uint8_t kSmapVersion = 1;

std::vector<std::uint8_t> EncodeSigmaMap(const SigmaMap& map);
SigmaMap DecodeSigmaMap(const std::vector<std::uint8_t>& bytes,
                        const std::string& source = "<memory>");

SigmaMap LoadSigmaMap(const std::filesystem::path& path);
void SaveSigmaMap(const SigmaMap& map, const std::filesystem::path& path);

// Rounds every value to binary32, i.e. what a save/load cycle yields.
SigmaMap RoundToFloat(const SigmaMap& map);

}  // namespace sigmap

#endif  // SIGMAP_SMAP_IO_H_
