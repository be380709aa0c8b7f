// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/gateway/backend.hpp"

namespace medforge::gateway {

std::optional<std::vector<double>> Backend::score_options(const CompletionRequest&,
                                                          const std::vector<std::string>&) {
  return std::nullopt;
}

CallProbe::Scope::Scope(CallProbe& probe) : probe_(probe) {
  probe_.calls_.fetch_add(1);
  int now = probe_.inflight_.fetch_add(1) + 1;
  int peak = probe_.peak_.load();
  while (now > peak && !probe_.peak_.compare_exchange_weak(peak, now)) {
  }
}

CallProbe::Scope::~Scope() { probe_.inflight_.fetch_sub(1); }

}  // namespace medforge::gateway
