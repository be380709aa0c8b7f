// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>

namespace medforge {

/// Single-pass substitution of `{name}` placeholders. Substituted values are
/// never re-scanned. Placeholders without a value are left untouched.
/// Throws TemplateError when any name in `required` does not occur in
/// `tmpl`.
std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string>& values,
                            std::initializer_list<std::string_view> required = {});

bool has_placeholder(std::string_view tmpl, std::string_view name);

/// Reads a template file, dropping leading `#` lines and the blank line after them.
std::string read_template(const std::filesystem::path& path);

}  // namespace medforge
