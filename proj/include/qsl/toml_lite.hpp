// Copyright 2026 The qsl Authors
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

#include <string>

#include <nlohmann/json.hpp>

namespace qsl {

using Json = nlohmann::ordered_json;

/// Parses the TOML subset used by scenario configs into a JSON document:
/// comments, single-level [section] headers, bare keys, quoted strings,
/// integers, floats, booleans, and (possibly nested, possibly multiline)
/// arrays. ParseError messages carry the line number.
Json parse_toml_lite(const std::string& text);

}  // namespace qsl
