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

#ifndef ROBSCORE_IO_H_
#define ROBSCORE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace robscore {

// Decimal rendering with 17 significant digits, lossless for IEEE doubles.
// Infinities render as "inf" / "-inf".
std::string FormatDouble(double value);

// Strict decimal parse of the whole field; throws FormatError on failure.
double ParseDouble(std::string_view text);
long long ParseInteger(std::string_view text);

// Writes `contents` to a sibling temporary file and renames it over `path`.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view contents);

std::string ReadFile(const std::filesystem::path& path);

}  // namespace robscore

#endif  // ROBSCORE_IO_H_
