// Copyright 2026 The ghawkes Authors
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

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace ghawkes {

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

/// Reads (x, y) pairs from a two-column CSV. A non-numeric first line is
/// treated as a header. Blank lines and lines starting with '#' are skipped.
std::pair<std::vector<double>, std::vector<double>> read_two_column_csv(
    const std::filesystem::path& path);

/// Writes `text` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace ghawkes
