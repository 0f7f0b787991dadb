// Copyright 2026 The hsched Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HSCHED_CLI_H_
#define HSCHED_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace hsched {

// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInternalError = 2;

const char* Version();

// Runs one subcommand. `args` excludes the program name. Every command that
// writes an output file (--out) also writes "<out>.manifest.json", which
// `replay --manifest` re-executes and verifies.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace hsched

#endif  // HSCHED_CLI_H_
