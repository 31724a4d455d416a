// Copyright 2026 The bmetric Authors
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
#include <string_view>
#include <vector>

#include "bmetric/model.hpp"
#include "bmetric/validation.hpp"

namespace bmetric {

/// A parsed script plus the non-fatal findings produced while reading it.
struct ParseResult {
  ProblemSpec spec;
  std::vector<Diagnostic> warnings;
};

/// Reads a behaviour script. Omitted attributes become constant 1.0,
/// AndOr defaults to "And" and PosNeg to "Positive". Throws ParseError
/// (naming the element path) on malformed XML, unknown elements or
/// attributes, and constants outside [0, 1]. The legacy spelling
/// "Entitiy_Types" is accepted with a warning.
ParseResult parse_script(std::string_view text);

/// parse_script() on a file's contents. Throws IoError if unreadable.
ParseResult parse_script_file(const std::filesystem::path& path);

/// Canonical XML: corrected element names, every attribute explicit.
std::string serialize_script(const ProblemSpec& spec);

/// Whole-file read shared by the script, scenario and plan readers.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace bmetric
