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


#ifndef SIGMAP_TOOLS_CLI_PROVENANCE_H_
#define SIGMAP_TOOLS_CLI_PROVENANCE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sigmap::cli {

// Tool version recorded in every output.
std::string_view ToolVersion();

// 64-bit FNV-1a.
std::uint64_t Fnv1a64(std::string_view bytes);

// Hash of the effective settings: pairs are sorted by key and hashed as
// "key=value\n" lines, so the result does not depend on option order.
std::string SettingsHash(std::vector<std::pair<std::string, std::string>> settings);

// Identifies how an output was produced. Contains no timestamps, so reruns
// with the same settings write identical bytes.
struct Provenance {
  std::string command;
  std::uint64_t seed = 0;
  std::string config_hash;

  // "tool=...", "command=...", "seed=...", "config_hash=..." in that order.
  std::vector<std::string> Lines() const;
  // Writes Lines() to dir/provenance.txt.
  void Write(const std::filesystem::path& dir) const;
};

}  // namespace sigmap::cli

#endif  // SIGMAP_TOOLS_CLI_PROVENANCE_H_
