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


#ifndef D3QN_CLI_CONFIG_H_
#define D3QN_CLI_CONFIG_H_

#include <filesystem>
#include <string>

#include "d3qn/train/trainer.h"

namespace d3qn::cli {

// INI-style run configuration. Sections: [curriculum], [run], [env],
// [sensor], [agent], [eval]. Unknown sections or keys are a ConfigError, so
// are malformed values. Missing keys keep their current value in `config`.
void ApplyConfigText(const std::string& text, RunConfig& config);
void ApplyConfigFile(const std::filesystem::path& path, RunConfig& config);

// Fully resolved config in the same format. Reals are printed with enough
// digits to parse back to the same double.
std::string ConfigToText(const RunConfig& config);

}  // namespace d3qn::cli

#endif  // D3QN_CLI_CONFIG_H_
