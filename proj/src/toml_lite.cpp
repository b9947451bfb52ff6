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

#include "qsl/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "qsl/errors.hpp"

namespace qsl {

namespace {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char take() {
    const char c = text[pos++];
    if (c == '\n') ++line;
    return c;
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "line " << line << ": " << what;
    throw ParseError(os.str());
  }
};

bool is_bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

/// Skips spaces and tabs; with comments, also a trailing # comment.
void skip_inline(Cursor& c, bool comments = true) {
  while (!c.done()) {
    const char ch = c.peek();
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      c.take();
    } else if (comments && ch == '#') {
      while (!c.done() && c.peek() != '\n') c.take();
    } else {
      break;
    }
  }
}

/// Skips whitespace, newlines, and comments (used between array items).
void skip_all(Cursor& c) {
  while (!c.done()) {
    skip_inline(c);
    if (!c.done() && c.peek() == '\n') {
      c.take();
    } else {
      break;
    }
  }
}

void expect_line_end(Cursor& c) {
  skip_inline(c);
  if (c.done()) return;
  if (c.peek() == '\n') {
    c.take();
    return;
  }
  c.fail(std::string("unexpected trailing character '") + c.peek() + "'");
}

std::string parse_bare_key(Cursor& c) {
  std::string key;
  while (!c.done() && is_bare_key_char(c.peek())) key.push_back(c.take());
  if (key.empty()) c.fail("expected a key");
  return key;
}

std::string parse_string(Cursor& c) {
  c.take();  // opening quote
  std::string out;
  while (true) {
    if (c.done() || c.peek() == '\n') c.fail("unterminated string");
    const char ch = c.take();
    if (ch == '"') return out;
    if (ch == '\\') {
      if (c.done()) c.fail("unterminated escape");
      const char esc = c.take();
      switch (esc) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        default:
          c.fail(std::string("unsupported escape '\\") + esc + "'");
      }
    } else {
      out.push_back(ch);
    }
  }
}

Json parse_value(Cursor& c);

Json parse_array(Cursor& c) {
  c.take();  // opening bracket
  Json arr = Json::array();
  skip_all(c);
  while (true) {
    if (c.done()) c.fail("unterminated array");
    if (c.peek() == ']') {
      c.take();
      return arr;
    }
    arr.push_back(parse_value(c));
    skip_all(c);
    if (c.done()) c.fail("unterminated array");
    if (c.peek() == ',') {
      c.take();
      skip_all(c);
    } else if (c.peek() != ']') {
      c.fail("expected ',' or ']' in array");
    }
  }
}

Json parse_scalar(Cursor& c) {
  std::string token;
  while (!c.done()) {
    const char ch = c.peek();
    if (ch == ',' || ch == ']' || ch == '#' || ch == '\n' || ch == ' ' ||
        ch == '\t' || ch == '\r') {
      break;
    }
    token.push_back(c.take());
  }
  if (token.empty()) c.fail("expected a value");
  if (token == "true") return Json(true);
  if (token == "false") return Json(false);

  const char* begin = token.data();
  const char* end = begin + token.size();
  std::int64_t as_int = 0;
  auto [iptr, iec] = std::from_chars(begin, end, as_int);
  if (iec == std::errc() && iptr == end) return Json(as_int);
  double as_double = 0.0;
  auto [dptr, dec] = std::from_chars(begin, end, as_double);
  if (dec == std::errc() && dptr == end) return Json(as_double);
  c.fail("malformed value '" + token + "'");
}

Json parse_value(Cursor& c) {
  if (c.done()) c.fail("expected a value");
  const char ch = c.peek();
  if (ch == '"') return Json(parse_string(c));
  if (ch == '[') return parse_array(c);
  return parse_scalar(c);
}

}  // namespace

Json parse_toml_lite(const std::string& text) {
  Cursor c{text};
  Json doc = Json::object();
  Json* table = &doc;

  while (true) {
    skip_all(c);
    if (c.done()) break;

    if (c.peek() == '[') {
      c.take();
      const std::string section = parse_bare_key(c);
      if (c.done() || c.take() != ']') c.fail("expected ']' after section name");
      if (doc.contains(section)) c.fail("duplicate section [" + section + "]");
      doc[section] = Json::object();
      table = &doc[section];
      expect_line_end(c);
      continue;
    }

    const std::string key = parse_bare_key(c);
    skip_inline(c);
    if (c.done() || c.take() != '=') c.fail("expected '=' after key '" + key + "'");
    skip_inline(c);
    if (table->contains(key)) c.fail("duplicate key '" + key + "'");
    (*table)[key] = parse_value(c);
    expect_line_end(c);
  }
  return doc;
}

}  // namespace qsl
