// Copyright 2026 The arbf-scaffold Authors
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

// Line-oriented tokenizer shared by the ASCII readers. Blank lines and '#'
// comments are skipped; line numbers are 1-based and refer to the source.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arbf/errors.hpp"

namespace arbf {

class TextReader {
 public:
  explicit TextReader(const std::filesystem::path& path) : name_(path.string()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + name_ + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text_ = buf.str();
  }

  TextReader(std::string text, std::string name) : name_(std::move(name)), text_(std::move(text)) {}

  /// Tokens of the next non-empty line; ParseError at end of input.
  std::vector<std::string> next_line() {
    std::vector<std::string> tokens;
    while (tokens.empty()) {
      if (!read_raw()) throw ParseError(name_ + ": unexpected end of file", line_ + 1);
      tokens = split(current_);
    }
    return tokens;
  }

  /// True if only blank lines and comments remain.
  bool at_end() {
    const std::size_t saved_pos = pos_;
    const std::size_t saved_line = line_;
    std::string saved = current_;
    while (read_raw()) {
      if (!split(current_).empty()) {
        pos_ = saved_pos;
        line_ = saved_line;
        current_ = saved;
        return false;
      }
    }
    return true;
  }

  std::size_t line_number() const { return line_; }
  const std::string& name() const { return name_; }

  double to_real(const std::string& tok) const {
    const char* begin = tok.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v))
      throw ParseError(name_ + ": '" + tok + "' is not a finite number", line_);
    return v;
  }

  long long to_integer(const std::string& tok) const {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError(name_ + ": '" + tok + "' is not an integer", line_);
    return v;
  }

  std::size_t to_size(const std::string& tok) const {
    const long long v = to_integer(tok);
    if (v < 0) throw ParseError(name_ + ": count '" + tok + "' is negative", line_);
    return static_cast<std::size_t>(v);
  }

 private:
  bool read_raw() {
    if (pos_ >= text_.size()) return false;
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string::npos) end = text_.size();
    current_.assign(text_, pos_, end - pos_);
    pos_ = end + 1;
    ++line_;
    return true;
  }

  static std::vector<std::string> split(std::string_view line) {
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) out.emplace_back(line.substr(i, j - i));
      i = j;
    }
    return out;
  }

  std::string name_;
  std::string text_;
  std::string current_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

}  // namespace arbf
