// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/chat/transcript.hpp"

#include <cctype>
#include <regex>

#include "medforge/common/error.hpp"
#include "medforge/common/utf8.hpp"

namespace medforge::chat {

std::string_view to_string(Speaker s) { return s == Speaker::patient ? "patient" : "doctor"; }

Speaker speaker_from_string(std::string_view s) {
  if (s == "patient") return Speaker::patient;
  if (s == "doctor") return Speaker::doctor;
  throw SchemaError(0, "unknown speaker '" + std::string(s) + "'");
}

void validate_turns(const std::vector<Turn>& turns) {
  if (turns.size() < 2) throw RoleOrderError("a dialogue needs at least a patient and a doctor turn");
  if (turns.size() > kMaxTurns) throw RoleOrderError("dialogue exceeds " + std::to_string(kMaxTurns) + " turns");
  if (turns.front().speaker != Speaker::patient) throw RoleOrderError("first speaker must be the patient");
  for (std::size_t i = 0; i < turns.size(); ++i) {
    if (trim(turns[i].text).empty()) throw EmptyTurnError("turn " + std::to_string(i + 1) + " is empty");
    if (i > 0 && turns[i].speaker == turns[i - 1].speaker) {
      throw RoleOrderError("turns " + std::to_string(i) + " and " + std::to_string(i + 1) +
                           " have the same speaker");
    }
  }
  if (turns.back().speaker != Speaker::doctor) throw RoleOrderError("last speaker must be the doctor");
}

std::vector<Turn> parse_transcript(std::string_view raw, bool require_terminal) {
  static const std::regex marker(R"(^\s*\**\s*(patient|doctor)\s*\**\s*:\s*\**\s*)", std::regex::icase);

  std::vector<Turn> turns;
  bool terminated = false;
  std::size_t pos = 0;
  while (pos <= raw.size() && !terminated) {
    std::size_t end = raw.find('\n', pos);
    if (end == std::string_view::npos) end = raw.size();
    std::string line(raw.substr(pos, end - pos));
    pos = end + 1;

    auto term = line.find(kTerminalMarker);
    if (term != std::string::npos) {
      line.resize(term);
      terminated = true;
    }

    std::smatch m;
    if (std::regex_search(line, m, marker)) {
      char first = static_cast<char>(std::tolower(static_cast<unsigned char>(m[1].str()[0])));
      turns.push_back({first == 'p' ? Speaker::patient : Speaker::doctor, m.suffix().str()});
    } else if (!turns.empty()) {
      turns.back().text += '\n';
      turns.back().text += line;
    }
    if (end == raw.size()) break;
  }

  if (turns.empty()) throw NoMarkersError("no Patient:/Doctor: markers found");
  for (auto& t : turns) t.text = std::string(trim(t.text));
  for (std::size_t i = 0; i < turns.size(); ++i) {
    if (turns[i].text.empty()) throw EmptyTurnError("turn " + std::to_string(i + 1) + " is empty");
  }
  if (turns.front().speaker != Speaker::patient) throw RoleOrderError("first speaker must be the patient");
  for (std::size_t i = 1; i < turns.size(); ++i) {
    if (turns[i].speaker == turns[i - 1].speaker) {
      throw RoleOrderError("turns " + std::to_string(i) + " and " + std::to_string(i + 1) +
                           " have the same speaker");
    }
  }
  if (turns.size() > kMaxTurns) turns.resize(kMaxTurns);  // alternating from patient: ends on doctor
  if (require_terminal && !terminated) throw MissingTerminalMarker("dialogue does not end with [END]");
  validate_turns(turns);
  return turns;
}

std::string render_transcript(const std::vector<Turn>& turns) {
  std::string out;
  for (const auto& t : turns) {
    out += t.speaker == Speaker::patient ? "Patient: " : "Doctor: ";
    out += t.text;
    out += '\n';
  }
  out += kTerminalMarker;
  return out;
}

Json to_json(const ChatTranscript& t) {
  Json turns = Json::array();
  for (const auto& turn : t.turns) turns.push_back({{"speaker", to_string(turn.speaker)}, {"text", turn.text}});
  return {{"grounding_id", t.grounding_id},
          {"turns", std::move(turns)},
          {"token_count", t.token_count},
          {"attempts", t.attempts}};
}

ChatTranscript transcript_from_json(const Json& j) {
  try {
    ChatTranscript t;
    t.grounding_id = j.at("grounding_id").get<std::string>();
    for (const auto& turn : j.at("turns")) {
      t.turns.push_back({speaker_from_string(turn.at("speaker").get<std::string>()),
                         turn.at("text").get<std::string>()});
    }
    t.token_count = j.value("token_count", std::size_t{0});
    t.attempts = j.value("attempts", 1);
    validate_turns(t.turns);
    return t;
  } catch (const Json::exception& e) {
    throw SchemaError(0, std::string("bad transcript: ") + e.what());
  }
}

double mean_turns(const std::vector<ChatTranscript>& transcripts) {
  if (transcripts.empty()) return 0.0;
  std::size_t total = 0;
  for (const auto& t : transcripts) total += t.turns.size();
  return static_cast<double>(total) / static_cast<double>(transcripts.size());
}

}  // namespace medforge::chat
