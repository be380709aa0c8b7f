// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

namespace medforge {

// Insertion-ordered so every emitted document has a stable, readable key order.
using Json = nlohmann::ordered_json;

}  // namespace medforge
