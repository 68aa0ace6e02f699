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


#ifndef SIGMAP_TOOLS_CLI_CLI_H_
#define SIGMAP_TOOLS_CLI_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace sigmap::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitIo = 3,
  kExitNumerical = 4,
};

// Parses `args` (without the program name), runs the selected verb and maps
// errors onto exit codes. Progress goes to `out`, diagnostics to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sigmap::cli

#endif  // SIGMAP_TOOLS_CLI_CLI_H_
