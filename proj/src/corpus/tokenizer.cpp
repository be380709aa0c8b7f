// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/corpus/tokenizer.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <cstdint>

#include "medforge/common/error.hpp"

namespace medforge::corpus {

namespace {

enum class CharClass { space, punct, word };

CharClass classify(UChar32 c) {
  if (c < 0) return CharClass::word;  // undecodable bytes stay inside a word
  if (u_isUWhiteSpace(c)) return CharClass::space;
  switch (u_charType(c)) {
    case U_CONTROL_CHAR:
    case U_SPACE_SEPARATOR:
    case U_LINE_SEPARATOR:
    case U_PARAGRAPH_SEPARATOR:
      return CharClass::space;
    case U_DASH_PUNCTUATION:
    case U_START_PUNCTUATION:
    case U_END_PUNCTUATION:
    case U_CONNECTOR_PUNCTUATION:
    case U_OTHER_PUNCTUATION:
    case U_INITIAL_PUNCTUATION:
    case U_FINAL_PUNCTUATION:
    case U_MATH_SYMBOL:
    case U_CURRENCY_SYMBOL:
    case U_MODIFIER_SYMBOL:
    case U_OTHER_SYMBOL:
      return CharClass::punct;
    default:
      return CharClass::word;
  }
}

std::size_t count_unicode_words(std::string_view text) {
  const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<std::int32_t>(text.size());
  std::size_t tokens = 0;
  bool in_word = false;
  std::int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    switch (classify(c)) {
      case CharClass::space:
        in_word = false;
        break;
      case CharClass::punct:
        ++tokens;
        in_word = false;
        break;
      case CharClass::word:
        if (!in_word) ++tokens;
        in_word = true;
        break;
    }
  }
  return tokens;
}

std::size_t count_whitespace_chunks(std::string_view text) {
  std::size_t tokens = 0;
  bool in_chunk = false;
  for (char c : text) {
    bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    if (!ws && !in_chunk) ++tokens;
    in_chunk = !ws;
  }
  return tokens;
}

}  // namespace

TokenizerRegistry& TokenizerRegistry::global() {
  static TokenizerRegistry* registry = [] {
    auto* r = new TokenizerRegistry;
    r->add(std::string(kDefaultTokenizer), count_unicode_words);
    r->add(std::string(kWhitespaceTokenizer), count_whitespace_chunks);
    return r;
  }();
  return *registry;
}

void TokenizerRegistry::add(std::string id, TokenCounter counter) {
  std::lock_guard lock(mu_);
  counters_[std::move(id)] = std::move(counter);
}

bool TokenizerRegistry::contains(std::string_view id) const {
  std::lock_guard lock(mu_);
  return counters_.find(id) != counters_.end();
}

TokenCounter TokenizerRegistry::get(std::string_view id) const {
  std::lock_guard lock(mu_);
  auto it = counters_.find(id);
  if (it == counters_.end()) throw UnknownTokenizer("tokenizer '" + std::string(id) + "' is not registered");
  return it->second;
}

std::vector<std::string> TokenizerRegistry::ids() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, _] : counters_) out.push_back(id);
  return out;
}

std::size_t count_tokens(std::string_view text, std::string_view tokenizer_id) {
  return TokenizerRegistry::global().get(tokenizer_id)(text);
}

std::size_t count_tokens_batch(const std::vector<std::string_view>& texts,
                               std::string_view tokenizer_id, int threads) {
  auto counter = TokenizerRegistry::global().get(tokenizer_id);
  const auto n = static_cast<long long>(texts.size());
  unsigned long long total = 0;
#pragma omp parallel for reduction(+ : total) schedule(static) num_threads(threads > 0 ? threads : 1)
  for (long long i = 0; i < n; ++i) {
    total += counter(texts[static_cast<std::size_t>(i)]);
  }
  return static_cast<std::size_t>(total);
}

std::size_t count_tokens_batch_serial(const std::vector<std::string_view>& texts,
                                      std::string_view tokenizer_id) {
  auto counter = TokenizerRegistry::global().get(tokenizer_id);
  std::size_t total = 0;
  for (auto t : texts) total += counter(t);
  return total;
}

}  // namespace medforge::corpus
