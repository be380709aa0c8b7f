// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "medforge/chat/mcqa.hpp"
#include "medforge/chat/transcript.hpp"
#include "medforge/common/json.hpp"

namespace medforge::corpus {

enum class Kind { MCQA, QA, Chat };
enum class Language { en, ar };
enum class Origin {
  PubMedQA,
  MedMCQA,
  MedQA,
  HealthCareMagic,
  iCliniq,
  MedicalMeadow,
  UMLS,
  LiveQA,
  MedicationQA,
  synthesized
};

std::string_view to_string(Kind k);
Kind kind_from_string(std::string_view s);
std::string_view to_string(Language l);
Language language_from_string(std::string_view s);
std::string_view to_string(Origin o);
Origin origin_from_string(std::string_view s);

struct QaPair {
  std::string question;
  std::string answer;

  bool operator==(const QaPair&) const = default;
};

using Payload = std::variant<chat::McqaItem, QaPair, chat::ChatTranscript>;

/// A normalized instruction item in one language.
struct SourceRecord {
  std::string record_id;
  Kind kind = Kind::QA;
  Language language = Language::en;
  Origin origin = Origin::synthesized;
  /// Id of the English record this one descends from; equals record_id
  /// for English originals.
  std::string source_id;
  Payload payload;

  /// Throws SchemaError when the payload does not match the kind.
  void validate() const;

  bool operator==(const SourceRecord&) const = default;
};

Kind kind_of(const Payload& p);

Json payload_to_json(const Payload& p);
Payload payload_from_json(Kind kind, const Json& j);
Json to_json(const SourceRecord& r);
SourceRecord record_from_json(const Json& j);

struct IngestResult {
  std::vector<SourceRecord> records;
  std::size_t duplicates = 0;
};

/// Reads an upstream JSONL dump in the origin's schema:
///   MedMCQA        {question, opa, opb, opc, opd, cop (0-based)}
///   MedQA          {question, options: {"A": ...}, answer_idx}
///   PubMedQA       {question, context (string | [strings]), final_decision}
///   QA origins     {question | input | instruction, answer | output}
///   synthesized    chat transcript lines {grounding_id, turns, ...}
/// Record ids are "<origin>:<first 16 hex of the payload hash>"; repeated
/// payloads are dropped and counted. Throws SchemaError with the line.
IngestResult ingest(const std::filesystem::path& source_file, Origin origin);
IngestResult ingest_text(std::string_view jsonl, Origin origin);

}  // namespace medforge::corpus
