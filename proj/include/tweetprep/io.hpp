// Copyright 2026 The tweetprep Authors
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


// File helpers shared by the stages. Writes go to a sibling temp file that
// is renamed into place, so a crash never leaves a partial artifact.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tweetprep {

/// Throws IoFailure.
std::string read_file(const std::filesystem::path& path);

/// Atomic replace of `path` with `contents`. Throws IoFailure.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Splits on '\n', stripping a trailing '\r'. A final empty line is dropped.
std::vector<std::string_view> split_lines(std::string_view text);

/// Parses "key = value" lines; '#' starts a comment line. Throws BadConfig
/// on a line without '=' or a repeated key. `origin` names the source in
/// diagnostics.
std::map<std::string, std::string> parse_key_values(std::string_view text,
                                                    std::string_view origin);

}  // namespace tweetprep
