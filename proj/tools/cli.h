// Copyright 2026 The Stylecomp Authors.
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

#ifndef STYLECOMP_TOOLS_CLI_H_
#define STYLECOMP_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "stylecomp/io.h"

namespace stylecomp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumeric = 3;

// Parses argv, runs one subcommand and maps failures to exit codes.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Executes a subcommand on fully resolved options (the "options" object of
// a manifest). Throws stylecomp::Error subclasses.
void Execute(const std::string& command, const Json& options, std::ostream& out,
             std::ostream& err, bool quiet);

}  // namespace stylecomp::cli

#endif  // STYLECOMP_TOOLS_CLI_H_
