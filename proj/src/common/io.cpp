// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/common/io.hpp"

#include <algorithm>
#include <sstream>

#include "medforge/common/error.hpp"

namespace medforge {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_atomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::vector<JsonLine> parse_jsonl(std::string_view text) {
  std::vector<JsonLine> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") != std::string_view::npos) {
      try {
        out.push_back({line_no, Json::parse(line)});
      } catch (const Json::parse_error& e) {
        throw SchemaError(line_no, std::string("invalid JSON: ") + e.what());
      }
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

std::vector<JsonLine> read_jsonl(const fs::path& path) {
  try {
    return parse_jsonl(read_text(path));
  } catch (const SchemaError& e) {
    throw SchemaError(e.line(), path.string() + ": " + e.what());
  }
}

std::string to_jsonl(const std::vector<Json>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

void write_jsonl_atomic(const fs::path& path, const std::vector<Json>& records) {
  write_text_atomic(path, to_jsonl(records));
}

std::vector<fs::path> list_jsonl(const fs::path& dir) {
  std::vector<fs::path> files;
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

AppendLog::AppendLog(fs::path path) : path_(std::move(path)) {
  if (path_.has_parent_path()) fs::create_directories(path_.parent_path());
  out_.open(path_, std::ios::binary | std::ios::app);
  if (!out_) throw IoError("cannot open log " + path_.string());
}

void AppendLog::append(const Json& record) {
  std::string line = record.dump();
  line += '\n';
  std::lock_guard lock(mu_);
  out_.write(line.data(), static_cast<std::streamsize>(line.size()));
  out_.flush();
  if (!out_) throw IoError("append failed on " + path_.string());
}

}  // namespace medforge
