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

#include "qsl/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace qsl {

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& token) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end) {
    throw IoError("parse_double: malformed number '" + token + "'");
  }
  return out;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("write_text_atomic: cannot open " + tmp.string());
    }
    out << content;
    if (!out.flush()) {
      throw IoError("write_text_atomic: write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw IoError("write_text_atomic: rename to " + path.string() + " failed: " +
                  ec.message());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("read_text: cannot open " + path.string());
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_matrix_csv(const std::filesystem::path& path, const ComplexMatrix& m) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ',';
      os << format_full(m(i, j).real()) << ',' << format_full(m(i, j).imag());
    }
    os << '\n';
  }
  write_text_atomic(path, os.str());
}

ComplexMatrix read_matrix_csv(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::vector<double> fields;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      fields.push_back(parse_double(cell));
    }
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) {
    throw IoError("read_matrix_csv: no data in " + path.string());
  }
  const std::size_t fields_per_row = rows.front().size();
  if (fields_per_row == 0 || fields_per_row % 2 != 0) {
    throw IoError("read_matrix_csv: expected Re,Im field pairs in " + path.string());
  }
  const auto cols = static_cast<Eigen::Index>(fields_per_row / 2);
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != fields_per_row) {
      throw IoError("read_matrix_csv: ragged row " + std::to_string(i) + " in " +
                    path.string());
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), j) =
          Complex(rows[i][2 * static_cast<std::size_t>(j)],
                  rows[i][2 * static_cast<std::size_t>(j) + 1]);
    }
  }
  return m;
}

}  // namespace qsl
