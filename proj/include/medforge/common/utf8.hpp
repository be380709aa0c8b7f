// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace medforge {

bool is_valid_utf8(std::string_view text);

/// Strips leading and trailing ASCII whitespace.
std::string_view trim(std::string_view text);

}  // namespace medforge
