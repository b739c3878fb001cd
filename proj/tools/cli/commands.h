// Copyright 2026 The FreqGuard Authors.
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

#ifndef FREQGUARD_TOOLS_CLI_COMMANDS_H_
#define FREQGUARD_TOOLS_CLI_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

#include "run_config.h"

namespace freqguard::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFormat = 2;
inline constexpr int kExitOther = 3;

// Each command writes its files under config["out"] and returns what it
// prints on stdout.
std::string cmd_poison(const Json& config);
std::string cmd_defend(const Json& config);
std::string cmd_analyze(const Json& config);
std::string cmd_train(const Json& config);
std::string cmd_eval(const Json& config);  // trains first unless "encoder" is set
std::string cmd_project(const Json& config);

const std::vector<std::string>& command_names();

/// Runs a command by name and maps failures to exit codes.
int run_command(const std::string& name, const Json& config, std::ostream& out,
                std::ostream& err);

std::string format_double(double value);

}  // namespace freqguard::cli

#endif  // FREQGUARD_TOOLS_CLI_COMMANDS_H_
