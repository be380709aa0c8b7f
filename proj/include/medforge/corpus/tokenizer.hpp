// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace medforge::corpus {

/// Default segmentation: maximal runs of word characters (letters, digits,
/// combining marks, joiners) are one token each; every punctuation or
/// symbol code point is its own token; whitespace and controls separate.
inline constexpr std::string_view kDefaultTokenizer = "unicode-word-punct-v1";
/// Whitespace-delimited chunks.
inline constexpr std::string_view kWhitespaceTokenizer = "whitespace-v1";

using TokenCounter = std::function<std::size_t(std::string_view)>;

class TokenizerRegistry {
 public:
  /// Process-wide registry preloaded with the built-in tokenizers.
  static TokenizerRegistry& global();

  void add(std::string id, TokenCounter counter);
  bool contains(std::string_view id) const;
  /// Throws UnknownTokenizer.
  TokenCounter get(std::string_view id) const;
  std::vector<std::string> ids() const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, TokenCounter, std::less<>> counters_;
};

std::size_t count_tokens(std::string_view text, std::string_view tokenizer_id = kDefaultTokenizer);

/// Total tokens over many texts; OpenMP reduction over the texts.
std::size_t count_tokens_batch(const std::vector<std::string_view>& texts,
                               std::string_view tokenizer_id, int threads);
/// Serial reference for count_tokens_batch.
std::size_t count_tokens_batch_serial(const std::vector<std::string_view>& texts,
                                      std::string_view tokenizer_id);

}  // namespace medforge::corpus
