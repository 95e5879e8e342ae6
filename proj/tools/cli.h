// Copyright 2026 The leoho Authors.
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


// Command-line front end. Kept in a library so tests can drive it without
// spawning processes.

#ifndef LEOHO_TOOLS_CLI_H_
#define LEOHO_TOOLS_CLI_H_

#include <ostream>

namespace leoho::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

// Runs `leoho <subcommand> ...` and returns the process exit code.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace leoho::cli

#endif  // LEOHO_TOOLS_CLI_H_
