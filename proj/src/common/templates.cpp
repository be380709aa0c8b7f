// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/common/templates.hpp"

#include "medforge/common/error.hpp"
#include "medforge/common/io.hpp"

namespace medforge {

namespace {

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

}  // namespace

bool has_placeholder(std::string_view tmpl, std::string_view name) {
  std::string needle = "{" + std::string(name) + "}";
  return tmpl.find(needle) != std::string_view::npos;
}

std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string>& values,
                            std::initializer_list<std::string_view> required) {
  for (auto name : required) {
    if (!has_placeholder(tmpl, name)) {
      throw TemplateError("template is missing placeholder {" + std::string(name) + "}");
    }
  }
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      std::size_t j = i + 1;
      while (j < tmpl.size() && is_name_char(tmpl[j])) ++j;
      if (j < tmpl.size() && tmpl[j] == '}' && j > i + 1) {
        auto it = values.find(std::string(tmpl.substr(i + 1, j - i - 1)));
        if (it != values.end()) {
          out += it->second;
          i = j + 1;
          continue;
        }
      }
    }
    out += tmpl[i++];
  }
  return out;
}

std::string read_template(const std::filesystem::path& path) {
  std::string text = read_text(path);
  std::size_t pos = 0;
  bool stripped = false;
  while (pos < text.size() && text[pos] == '#') {
    auto nl = text.find('\n', pos);
    pos = nl == std::string::npos ? text.size() : nl + 1;
    stripped = true;
  }
  if (stripped && pos < text.size() && text[pos] == '\n') ++pos;
  return text.substr(pos);
}

}  // namespace medforge
