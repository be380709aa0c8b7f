// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/pipeline/provenance.hpp"

#include <algorithm>

#include "medforge/common/error.hpp"
#include "medforge/common/hashing.hpp"
#include "medforge/common/io.hpp"

namespace medforge::pipeline {

namespace fs = std::filesystem;

namespace {

constexpr const char* kFile = "provenance.json";

std::vector<std::string> artifact_files(const fs::path& dir) {
  std::vector<std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), dir).generic_string();
    if (rel == kFile || rel.rfind("logs/", 0) == 0) continue;
    out.push_back(rel);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string config_hash(const Json& config) { return sha256_hex(config.dump()); }

Json provenance_stamp(const Json& config) {
  Json j = {{"config_hash", config_hash(config)}};
  for (const char* key : {"seed", "threshold", "max_rounds", "audit_rate"}) {
    if (config.contains(key)) j[key] = config[key];
  }
  return j;
}

void write_provenance(const fs::path& dir, const Json& config) {
  Json files = Json::object();
  for (const auto& rel : artifact_files(dir)) files[rel] = sha256_hex(read_text(dir / rel));
  Json j = {{"config", config}, {"config_hash", config_hash(config)}, {"files", std::move(files)}};
  write_text_atomic(dir / kFile, j.dump(2) + "\n");
}

VerifyResult verify_provenance(const fs::path& dir) {
  VerifyResult r;
  const auto path = dir / kFile;
  if (!fs::exists(path)) {
    r.problems.push_back("missing provenance.json");
    return r;
  }
  const Json prov = Json::parse(read_text(path));
  const std::string hash = prov.at("config_hash").get<std::string>();
  if (config_hash(prov.at("config")) != hash) r.problems.push_back("config_hash does not match config");

  const auto& listed = prov.at("files");
  for (const auto& [rel, digest] : listed.items()) {
    ++r.files_checked;
    if (!fs::exists(dir / rel)) {
      r.problems.push_back("missing file " + rel);
      continue;
    }
    const std::string text = read_text(dir / rel);
    if (sha256_hex(text) != digest.get<std::string>()) r.problems.push_back("hash mismatch for " + rel);
    if (rel.size() > 5 && rel.substr(rel.size() - 5) == ".json") {
      const Json j = Json::parse(text, nullptr, false);
      if (!j.is_discarded() && j.is_object() && j.contains("provenance") &&
          j["provenance"].value("config_hash", std::string()) != hash) {
        r.problems.push_back("embedded config_hash differs in " + rel);
      }
    }
  }
  for (const auto& rel : artifact_files(dir)) {
    if (!listed.contains(rel)) r.problems.push_back("unlisted file " + rel);
  }
  return r;
}

}  // namespace medforge::pipeline
