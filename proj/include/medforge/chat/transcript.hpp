// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "medforge/common/json.hpp"

namespace medforge::chat {

enum class Speaker { patient, doctor };

std::string_view to_string(Speaker s);
Speaker speaker_from_string(std::string_view s);

struct Turn {
  Speaker speaker = Speaker::patient;
  std::string text;

  bool operator==(const Turn&) const = default;
};

/// Hard cap on dialogue length; longer transcripts are cut after the last
/// doctor turn within the cap.
inline constexpr std::size_t kMaxTurns = 12;
inline constexpr std::string_view kTerminalMarker = "[END]";

struct ChatTranscript {
  std::string grounding_id;
  std::vector<Turn> turns;
  std::size_t token_count = 0;
  int attempts = 0;

  bool operator==(const ChatTranscript&) const = default;
};

/// Splits raw model output on "Patient:" / "Doctor:" line markers. Text
/// before the first marker is ignored and parsing stops at [END].
/// Multi-line turns are kept with their newlines.
///
/// Throws NoMarkersError, EmptyTurnError, RoleOrderError (first speaker
/// not patient, non-alternating, or ending on a patient turn), and
/// MissingTerminalMarker when `require_terminal` is set and [END] is absent.
std::vector<Turn> parse_transcript(std::string_view raw, bool require_terminal = false);

/// Inverse of parse_transcript: "Patient: ...\nDoctor: ...\n[END]".
std::string render_transcript(const std::vector<Turn>& turns);

/// Checks the alternation, first/last speaker and length invariants.
void validate_turns(const std::vector<Turn>& turns);

Json to_json(const ChatTranscript& t);
ChatTranscript transcript_from_json(const Json& j);

/// sum(|turns|) / N over a set of transcripts; 0 for an empty set.
double mean_turns(const std::vector<ChatTranscript>& transcripts);

}  // namespace medforge::chat
