// Copyright 2026 The d3qn Authors.
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


#ifndef D3QN_CLI_RUN_CLI_H_
#define D3QN_CLI_RUN_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace d3qn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Entry point behind the `d3qn` binary. args[0] is the program name.
// Subcommands: train, eval, compare, gradcheck, render. Settings come from
// built-in defaults, then --config, then D3QN_OUTPUT_DIR / D3QN_THREADS,
// then flags. Returns kExitUsage for bad invocations, kExitFailure for
// runtime errors; diagnostics go to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace d3qn::cli

#endif  // D3QN_CLI_RUN_CLI_H_
