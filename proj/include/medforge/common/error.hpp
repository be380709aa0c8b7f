// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "medforge/common/json.hpp"

namespace medforge {

/// Base of every error raised by the toolkit. `kind()` is the stable,
/// machine-readable name reported by the CLI and the review API.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

  /// Extra structured fields for error payloads.
  virtual Json details() const { return Json::object(); }

  Json to_json() const {
    Json j = {{"error", kind_}, {"message", what()}};
    const Json extra = details();
    for (auto& [k, v] : extra.items()) j[k] = v;
    return j;
  }

 private:
  std::string kind_;
};

#define MEDFORGE_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  }

// gateway
MEDFORGE_DEFINE_ERROR(AuthError);
MEDFORGE_DEFINE_ERROR(ExhaustedRetries);
MEDFORGE_DEFINE_ERROR(ScriptMiss);
MEDFORGE_DEFINE_ERROR(BackendError);
/// Retryable backend failure (timeouts, 429, 5xx, scripted failures).
MEDFORGE_DEFINE_ERROR(TransientError);
MEDFORGE_DEFINE_ERROR(InvalidRequest);
// translate-loop
MEDFORGE_DEFINE_ERROR(AlignmentError);
MEDFORGE_DEFINE_ERROR(ScoreParseError);
MEDFORGE_DEFINE_ERROR(InvalidState);
// chat-forge
MEDFORGE_DEFINE_ERROR(TemplateError);
MEDFORGE_DEFINE_ERROR(RoleOrderError);
MEDFORGE_DEFINE_ERROR(EmptyTurnError);
MEDFORGE_DEFINE_ERROR(NoMarkersError);
MEDFORGE_DEFINE_ERROR(MissingTerminalMarker);
MEDFORGE_DEFINE_ERROR(SynthesisExhausted);
// corpus-compiler
MEDFORGE_DEFINE_ERROR(RatioUnreachable);
MEDFORGE_DEFINE_ERROR(UnknownTokenizer);
MEDFORGE_DEFINE_ERROR(MissingField);
// review-service
MEDFORGE_DEFINE_ERROR(DuplicateTask);
MEDFORGE_DEFINE_ERROR(UnknownUnit);
MEDFORGE_DEFINE_ERROR(UnknownTask);
MEDFORGE_DEFINE_ERROR(AlreadyDecided);
MEDFORGE_DEFINE_ERROR(ClaimConflict);
// cli
MEDFORGE_DEFINE_ERROR(ConfigError);
MEDFORGE_DEFINE_ERROR(IoError);

#undef MEDFORGE_DEFINE_ERROR

/// Input did not match its declared schema. `line` is 1-based, 0 when the
/// problem is not tied to a line.
class SchemaError : public Error {
 public:
  SchemaError(std::size_t line, const std::string& message)
      : Error("SchemaError",
              line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }
  Json details() const override { return {{"line", line_}}; }

 private:
  std::size_t line_;
};

class CountMismatch : public Error {
 public:
  CountMismatch(std::string what, std::size_t expected, std::size_t got)
      : Error("CountMismatch", what + ": expected " + std::to_string(expected) +
                                   " items, got " + std::to_string(got)),
        expected_(expected),
        got_(got) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t got() const noexcept { return got_; }
  Json details() const override { return {{"expected", expected_}, {"got", got_}}; }

 private:
  std::size_t expected_;
  std::size_t got_;
};

}  // namespace medforge
