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

#include <filesystem>
#include <string>

#include "qsl/matrix.hpp"

namespace qsl {

/// Formats with 17 significant digits, enough to reload the exact bits.
std::string format_full(double v);

/// Strict double parse of the whole token (IoError otherwise).
double parse_double(const std::string& token);

/// Writes content to path via a temp file in the same directory plus an
/// atomic rename.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_text(const std::filesystem::path& path);

/// Matrix CSV layout: one row per matrix row; entry (i, j) occupies two
/// adjacent fields, Re then Im, at full precision. No header.
void write_matrix_csv(const std::filesystem::path& path, const ComplexMatrix& m);
ComplexMatrix read_matrix_csv(const std::filesystem::path& path);

}  // namespace qsl
