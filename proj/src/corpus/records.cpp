// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/corpus/records.hpp"

#include <algorithm>
#include <set>

#include "medforge/common/error.hpp"
#include "medforge/common/hashing.hpp"
#include "medforge/common/io.hpp"

namespace medforge::corpus {

namespace {

constexpr Origin kAllOrigins[] = {Origin::PubMedQA,      Origin::MedMCQA, Origin::MedQA,
                                  Origin::HealthCareMagic, Origin::iCliniq, Origin::MedicalMeadow,
                                  Origin::UMLS,          Origin::LiveQA,  Origin::MedicationQA,
                                  Origin::synthesized};

std::string required_string(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string() || j[key].get<std::string>().empty()) {
    throw SchemaError(0, std::string("missing or empty string field '") + key + "'");
  }
  return j[key].get<std::string>();
}

std::string first_nonempty(const Json& j, std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    if (j.contains(k) && j[k].is_string() && !j[k].get<std::string>().empty()) return j[k].get<std::string>();
  }
  std::string names;
  for (const char* k : keys) names += std::string(names.empty() ? "" : "/") + k;
  throw SchemaError(0, "missing field " + names);
}

chat::SourceDataset dataset_of(Origin o) {
  switch (o) {
    case Origin::PubMedQA: return chat::SourceDataset::PubMedQA;
    case Origin::MedQA: return chat::SourceDataset::MedQA;
    case Origin::MedMCQA: return chat::SourceDataset::MedMCQA;
    default: return chat::SourceDataset::other;
  }
}

chat::McqaItem parse_mcqa(const Json& j, Origin origin) {
  chat::McqaItem item;
  item.source_dataset = dataset_of(origin);
  item.question = required_string(j, "question");
  switch (origin) {
    case Origin::MedMCQA: {
      const char* keys[] = {"opa", "opb", "opc", "opd"};
      for (int i = 0; i < 4; ++i) {
        item.options.push_back({std::string(1, static_cast<char>('A' + i)), required_string(j, keys[i])});
      }
      if (!j.contains("cop") || !j["cop"].is_number_integer()) throw SchemaError(0, "missing integer 'cop'");
      int cop = j["cop"].get<int>();
      if (cop < 0 || cop > 3) throw SchemaError(0, "'cop' must be in 0..3");
      item.gold_label = std::string(1, static_cast<char>('A' + cop));
      break;
    }
    case Origin::MedQA: {
      if (!j.contains("options") || !j["options"].is_object()) throw SchemaError(0, "'options' must be an object");
      for (const auto& [label, text] : j["options"].items()) {
        if (!text.is_string()) throw SchemaError(0, "option " + label + " is not a string");
        item.options.push_back({label, text.get<std::string>()});
      }
      std::sort(item.options.begin(), item.options.end(),
                [](const auto& a, const auto& b) { return a.label < b.label; });
      item.gold_label = required_string(j, "answer_idx");
      break;
    }
    case Origin::PubMedQA: {
      if (j.contains("context")) {
        const auto& c = j["context"];
        if (c.is_string()) {
          item.context = c.get<std::string>();
        } else if (c.is_array()) {
          std::string joined;
          for (const auto& part : c) joined += (joined.empty() ? "" : "\n") + part.get<std::string>();
          item.context = joined;
        } else {
          throw SchemaError(0, "'context' must be a string or an array of strings");
        }
      }
      item.options = {{"A", "yes"}, {"B", "no"}, {"C", "maybe"}};
      std::string decision = required_string(j, "final_decision");
      if (decision == "yes") item.gold_label = "A";
      else if (decision == "no") item.gold_label = "B";
      else if (decision == "maybe") item.gold_label = "C";
      else throw SchemaError(0, "final_decision must be yes/no/maybe");
      break;
    }
    default:
      throw SchemaError(0, "origin is not an MCQA source");
  }
  return item;
}

Kind kind_of_origin(Origin o) {
  switch (o) {
    case Origin::PubMedQA:
    case Origin::MedMCQA:
    case Origin::MedQA: return Kind::MCQA;
    case Origin::synthesized: return Kind::Chat;
    default: return Kind::QA;
  }
}

}  // namespace

std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::MCQA: return "MCQA";
    case Kind::QA: return "QA";
    case Kind::Chat: return "Chat";
  }
  return "QA";
}

Kind kind_from_string(std::string_view s) {
  if (s == "MCQA") return Kind::MCQA;
  if (s == "QA") return Kind::QA;
  if (s == "Chat") return Kind::Chat;
  throw SchemaError(0, "unknown kind '" + std::string(s) + "'");
}

std::string_view to_string(Language l) { return l == Language::en ? "en" : "ar"; }

Language language_from_string(std::string_view s) {
  if (s == "en") return Language::en;
  if (s == "ar") return Language::ar;
  throw SchemaError(0, "unknown language '" + std::string(s) + "'");
}

std::string_view to_string(Origin o) {
  switch (o) {
    case Origin::PubMedQA: return "PubMedQA";
    case Origin::MedMCQA: return "MedMCQA";
    case Origin::MedQA: return "MedQA";
    case Origin::HealthCareMagic: return "HealthCareMagic";
    case Origin::iCliniq: return "iCliniq";
    case Origin::MedicalMeadow: return "MedicalMeadow";
    case Origin::UMLS: return "UMLS";
    case Origin::LiveQA: return "LiveQA";
    case Origin::MedicationQA: return "MedicationQA";
    case Origin::synthesized: return "synthesized";
  }
  return "synthesized";
}

Origin origin_from_string(std::string_view s) {
  for (auto o : kAllOrigins) {
    if (to_string(o) == s) return o;
  }
  throw ConfigError("unknown origin '" + std::string(s) + "'");
}

Kind kind_of(const Payload& p) {
  switch (p.index()) {
    case 0: return Kind::MCQA;
    case 1: return Kind::QA;
    default: return Kind::Chat;
  }
}

void SourceRecord::validate() const {
  if (record_id.empty()) throw SchemaError(0, "record has no id");
  if (kind_of(payload) != kind) throw SchemaError(0, "record " + record_id + ": payload does not match kind");
  if (const auto* m = std::get_if<chat::McqaItem>(&payload)) m->validate();
  if (const auto* q = std::get_if<QaPair>(&payload)) {
    if (q->question.empty() || q->answer.empty()) throw SchemaError(0, "record " + record_id + ": empty QA pair");
  }
  if (const auto* c = std::get_if<chat::ChatTranscript>(&payload)) chat::validate_turns(c->turns);
}

Json payload_to_json(const Payload& p) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, QaPair>) {
          return {{"question", v.question}, {"answer", v.answer}};
        } else {
          return chat::to_json(v);
        }
      },
      p);
}

Payload payload_from_json(Kind kind, const Json& j) {
  switch (kind) {
    case Kind::MCQA: return chat::mcqa_from_json(j);
    case Kind::QA: return QaPair{required_string(j, "question"), required_string(j, "answer")};
    case Kind::Chat: return chat::transcript_from_json(j);
  }
  throw SchemaError(0, "bad kind");
}

Json to_json(const SourceRecord& r) {
  return {{"record_id", r.record_id},
          {"kind", to_string(r.kind)},
          {"language", to_string(r.language)},
          {"origin", to_string(r.origin)},
          {"source_id", r.source_id},
          {"payload", payload_to_json(r.payload)}};
}

SourceRecord record_from_json(const Json& j) {
  try {
    SourceRecord r;
    r.record_id = j.at("record_id").get<std::string>();
    r.kind = kind_from_string(j.at("kind").get<std::string>());
    r.language = language_from_string(j.at("language").get<std::string>());
    r.origin = origin_from_string(j.at("origin").get<std::string>());
    r.source_id = j.value("source_id", r.record_id);
    r.payload = payload_from_json(r.kind, j.at("payload"));
    r.validate();
    return r;
  } catch (const Json::exception& e) {
    throw SchemaError(0, std::string("bad source record: ") + e.what());
  } catch (const ConfigError& e) {
    throw SchemaError(0, e.what());
  }
}

IngestResult ingest_text(std::string_view jsonl, Origin origin) {
  IngestResult result;
  std::set<std::string> seen;
  const Kind kind = kind_of_origin(origin);
  for (const auto& [line, j] : parse_jsonl(jsonl)) {
    try {
      if (!j.is_object()) throw SchemaError(0, "line is not a JSON object");
      Payload payload;
      switch (kind) {
        case Kind::MCQA: payload = parse_mcqa(j, origin); break;
        case Kind::QA:
          payload = QaPair{first_nonempty(j, {"question", "input", "instruction"}),
                           first_nonempty(j, {"answer", "output"})};
          break;
        case Kind::Chat: payload = chat::transcript_from_json(j); break;
      }
      if (auto* m = std::get_if<chat::McqaItem>(&payload)) m->item_id = "-";

      const std::string hash = sha256_hex(payload_to_json(payload).dump());
      if (!seen.insert(hash).second) {
        ++result.duplicates;
        continue;
      }
      SourceRecord r;
      r.record_id = std::string(to_string(origin)) + ":" + hash.substr(0, 16);
      r.kind = kind;
      r.language = Language::en;
      r.origin = origin;
      r.source_id = r.record_id;
      if (auto* m = std::get_if<chat::McqaItem>(&payload)) m->item_id = r.record_id;
      r.payload = std::move(payload);
      r.validate();
      result.records.push_back(std::move(r));
    } catch (const SchemaError& e) {
      throw SchemaError(line, e.what());
    } catch (const Error& e) {
      throw SchemaError(line, e.what());
    } catch (const Json::exception& e) {
      throw SchemaError(line, e.what());
    }
  }
  return result;
}

IngestResult ingest(const std::filesystem::path& source_file, Origin origin) {
  return ingest_text(read_text(source_file), origin);
}

}  // namespace medforge::corpus
