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


#include "cli/provenance.h"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "sigmap/error.h"

#ifndef SIGMAP_VERSION
#define SIGMAP_VERSION "0.0.0"
#endif

namespace sigmap::cli {

std::string_view ToolVersion() { return "sigmap " SIGMAP_VERSION; }

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string SettingsHash(std::vector<std::pair<std::string, std::string>> settings) {
  std::sort(settings.begin(), settings.end());
  std::string text;
  for (const auto& [key, value] : settings) text += key + "=" + value + "\n";
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(Fnv1a64(text)));
  return buf;
}

std::vector<std::string> Provenance::Lines() const {
  return {"tool=" + std::string(ToolVersion()), "command=" + command,
          "seed=" + std::to_string(seed), "config_hash=" + config_hash};
}

void Provenance::Write(const std::filesystem::path& dir) const {
  const auto path = dir / "provenance.txt";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& line : Lines()) out << line << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace sigmap::cli
