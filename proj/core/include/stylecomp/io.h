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

#ifndef STYLECOMP_IO_H_
#define STYLECOMP_IO_H_

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace stylecomp {

using Json = nlohmann::json;

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

// 1-based line number of a byte offset.
int LineOfOffset(std::string_view text, std::size_t offset);

// Parses JSON, converting syntax errors into ParseError with a line number.
Json ParseJson(std::string_view text, std::string_view what);

// Calls fn(line_json, line_number) for every non-blank line of a JSON-lines
// file.
void ForEachJsonLine(const std::filesystem::path& path,
                     const std::function<void(const Json&, int)>& fn);

// Canonical compact single-line rendering (keys sorted by nlohmann's map).
inline std::string DumpLine(const Json& j) { return j.dump() + "\n"; }

}  // namespace stylecomp

#endif  // STYLECOMP_IO_H_
