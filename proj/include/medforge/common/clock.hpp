// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <cstdint>
#include <string>

namespace medforge {

/// Milliseconds since the Unix epoch.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::int64_t now_ms() = 0;
};

class SystemClock final : public Clock {
 public:
  std::int64_t now_ms() override;
};

/// Deterministic clock: each read returns the previous value plus `step_ms`.
/// Used wherever outputs must be bit-identical across runs.
class LogicalClock final : public Clock {
 public:
  explicit LogicalClock(std::int64_t start_ms = 1704067200000, std::int64_t step_ms = 1000)
      : next_(start_ms), step_(step_ms) {}

  std::int64_t now_ms() override { return next_.fetch_add(step_); }

 private:
  std::atomic<std::int64_t> next_;
  std::int64_t step_;
};

/// "YYYY-MM-DDTHH:MM:SS.mmmZ"
std::string format_iso8601(std::int64_t epoch_ms);

/// Inverse of format_iso8601. Throws SchemaError on malformed input.
std::int64_t parse_iso8601(const std::string& text);

}  // namespace medforge
