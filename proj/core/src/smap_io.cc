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

#include "sigmap/smap_io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "sigmap/error.h"

namespace sigmap {
namespace {

constexpr std::size_t kHeaderSize = 13;

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t GetU32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

std::vector<std::uint8_t> EncodeSigmaMap(const SigmaMap& map) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + 4 * map.size());
  out.insert(out.end(), {'S', 'M', 'A', 'P', kSmapVersion});
  PutU32(out, static_cast<std::uint32_t>(map.width()));
  PutU32(out, static_cast<std::uint32_t>(map.height()));
  for (double v : map.data()) {
    PutU32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  }
  return out;
}

SigmaMap DecodeSigmaMap(const std::vector<std::uint8_t>& bytes, const std::string& source) {
  if (bytes.size() < kHeaderSize) throw FormatError("truncated SMAP header: " + source);
  if (std::memcmp(bytes.data(), "SMAP", 4) != 0) {
    throw FormatError("bad SMAP magic: " + source);
  }
  if (bytes[4] != kSmapVersion) {
    throw FormatError("unsupported SMAP version " + std::to_string(bytes[4]) + ": " + source);
  }
  const std::uint64_t w = GetU32(&bytes[5]);
  const std::uint64_t h = GetU32(&bytes[9]);
  if (w == 0 || h == 0 || w * h > (1ULL << 30)) {
    throw FormatError("invalid SMAP dimensions: " + source);
  }
  const std::uint64_t n = w * h;
  const std::uint64_t payload = bytes.size() - kHeaderSize;
  if (payload < 4 * n) {
    throw FormatError("truncated SMAP payload (" + std::to_string(payload / 4) + " of " +
                      std::to_string(n) + " values): " + source);
  }
  if (payload > 4 * n) throw FormatError("trailing bytes after SMAP payload: " + source);
  std::vector<double> data(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    data[i] = std::bit_cast<float>(GetU32(&bytes[kHeaderSize + 4 * i]));
  }
  try {
    return SigmaMap(static_cast<int>(w), static_cast<int>(h), std::move(data));
  } catch (const ParameterError&) {
    throw FormatError("SMAP contains negative or non-finite sigma: " + source);
  }
}

SigmaMap LoadSigmaMap(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes(std::istreambuf_iterator<char>(in), {});
  return DecodeSigmaMap(bytes, path.string());
}

void SaveSigmaMap(const SigmaMap& map, const std::filesystem::path& path) {
  const auto bytes = EncodeSigmaMap(map);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

SigmaMap RoundToFloat(const SigmaMap& map) {
  std::vector<double> data(map.data().begin(), map.data().end());
  for (double& v : data) v = static_cast<float>(v);
  return SigmaMap(map.width(), map.height(), std::move(data));
}

}  // namespace sigmap
