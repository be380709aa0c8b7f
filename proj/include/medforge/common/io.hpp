// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "medforge/common/json.hpp"

namespace medforge {

namespace fs = std::filesystem;

std::string read_text(const fs::path& path);

/// Writes to a sibling temp file and renames it over `path`.
void write_text_atomic(const fs::path& path, std::string_view content);

/// One parsed JSONL record with its 1-based source line.
struct JsonLine {
  std::size_t line = 0;
  Json value;
};

/// Parses every non-blank line; a malformed line raises SchemaError.
std::vector<JsonLine> read_jsonl(const fs::path& path);
std::vector<JsonLine> parse_jsonl(std::string_view text);

std::string to_jsonl(const std::vector<Json>& records);
void write_jsonl_atomic(const fs::path& path, const std::vector<Json>& records);

/// `*.jsonl` files directly under `dir`, sorted by name.
std::vector<fs::path> list_jsonl(const fs::path& dir);

/// Append-only line log. Each append is a single flushed write under a lock.
class AppendLog {
 public:
  explicit AppendLog(fs::path path);

  void append(const Json& record);
  const fs::path& path() const noexcept { return path_; }

 private:
  fs::path path_;
  std::mutex mu_;
  std::ofstream out_;
};

}  // namespace medforge
