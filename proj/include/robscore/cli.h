/* Copyright 2026 The Robscore Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef ROBSCORE_CLI_H_
#define ROBSCORE_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace robscore::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes of Run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumeric = 3;

// Parses `args` (without the program name), runs the selected subcommand and
// prints a one-line summary to `out`. Diagnostics go to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace robscore::cli

#endif  // ROBSCORE_CLI_H_
