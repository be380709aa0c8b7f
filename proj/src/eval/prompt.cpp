// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/eval/prompt.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "medforge/common/io.hpp"
#include "medforge/common/templates.hpp"
#include "medforge/common/utf8.hpp"

namespace medforge::eval {

namespace {

// Arabic option letters in abjad order.
const std::string kArabicLetters[] = {"أ", "ب", "ج", "د", "هـ"};

std::optional<std::size_t> letter_index(std::string_view s, std::size_t n) {
  if (s.size() == 1 && s[0] >= 'A' && s[0] <= 'Z') {
    const std::size_t i = static_cast<std::size_t>(s[0] - 'A');
    if (i < n) return i;
    return std::nullopt;
  }
  for (std::size_t i = 0; i < n && i < std::size(kArabicLetters); ++i) {
    if (s == kArabicLetters[i] || (i == 4 && s == "ه")) return i;
  }
  return std::nullopt;
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool word_char(unsigned char c) { return std::isalnum(c) || c >= 0x80 || c == '_'; }

bool contains_word(const std::string& hay, const std::string& needle) {
  if (needle.empty()) return false;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) {
    const bool left = pos == 0 || !word_char(static_cast<unsigned char>(hay[pos - 1])) ||
                      !word_char(static_cast<unsigned char>(needle.front()));
    const std::size_t end = pos + needle.size();
    const bool right = end == hay.size() || !word_char(static_cast<unsigned char>(hay[end])) ||
                       !word_char(static_cast<unsigned char>(needle.back()));
    if (left && right) return true;
  }
  return false;
}

std::optional<std::size_t> leading_letter(std::string_view text, std::size_t n) {
  std::size_t i = 0;
  while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '(' ||
                             text[i] == '[' || text[i] == '*')) {
    ++i;
  }
  text.remove_prefix(i);
  if (text.empty()) return std::nullopt;
  std::size_t len = static_cast<unsigned char>(text[0]) < 0x80 ? 1 : 2;
  if (text.substr(0, 4) == "هـ") len = 4;
  if (len > text.size()) return std::nullopt;
  auto idx = letter_index(text.substr(0, len), n);
  if (!idx) return std::nullopt;
  auto rest = text.substr(len);
  if (rest.empty()) return idx;
  const char c = rest[0];
  if (c == ')' || c == '.' || c == ':' || c == ']' || c == ',' || c == '\n' || c == '\r' || c == '*') {
    return idx;
  }
  return std::nullopt;
}

std::optional<std::size_t> answer_phrase(const std::string& text, std::size_t n) {
  static const std::regex en(R"([Aa]nswer\s*(?:[Ii]s|:)\s*(?:[Oo]ption\s*)?[\(\[*]*\s*([A-Z])(?![A-Za-z]))");
  static const std::regex ar("(?:الإجابة|الاجابة|الجواب)\\s*(?:الصحيحة\\s*)?(?:هي|:)?\\s*[\\(\\[]?\\s*"
                             "(هـ|أ|ب|ج|د|[A-Z])");
  std::smatch m;
  if (std::regex_search(text, m, en)) {
    if (auto i = letter_index(m.str(1), n)) return i;
  }
  if (std::regex_search(text, m, ar)) {
    if (auto i = letter_index(m.str(1), n)) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> option_text(std::string_view text, const std::vector<std::string>& options) {
  const std::string hay = lower_ascii(text);
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (contains_word(hay, lower_ascii(trim(options[i])))) hits.push_back(i);
  }
  // Drop hits that only matched as part of a longer matching option.
  std::vector<std::size_t> kept;
  for (auto i : hits) {
    const auto oi = lower_ascii(trim(options[i]));
    const bool inner = std::any_of(hits.begin(), hits.end(), [&](std::size_t j) {
      const auto oj = lower_ascii(trim(options[j]));
      return j != i && oj.size() > oi.size() && oj.find(oi) != std::string::npos;
    });
    if (!inner) kept.push_back(i);
  }
  if (kept.size() == 1) return kept[0];
  return std::nullopt;
}

}  // namespace

EvalTemplates EvalTemplates::defaults() {
  return {"Answer with the letter of the correct option only.",
          "أجب بحرف الخيار الصحيح فقط."};
}

EvalTemplates EvalTemplates::load(const std::filesystem::path& dir) {
  return {std::string(trim(read_template(dir / "eval_en.txt"))),
          std::string(trim(read_template(dir / "eval_ar.txt")))};
}

std::string option_letter(std::size_t index) { return std::string(1, static_cast<char>('A' + index)); }

std::string request_tag(const BenchmarkItem& item) {
  return "eval/" + std::string(corpus::to_string(item.language)) + "/" +
         std::string(to_string(item.dataset)) + "/" + item.item_id;
}

gateway::CompletionRequest format_mcqa_prompt(const BenchmarkItem& item, const EvalTemplates& tmpl) {
  item.validate();
  std::string body;
  if (item.context) body += *item.context + "\n\n";
  body += item.question + "\n\n";
  for (std::size_t i = 0; i < item.options.size(); ++i) {
    body += option_letter(i) + ") " + item.options[i] + "\n";
  }
  body += "\n";
  body += item.language == Language::ar ? tmpl.ar_instruction : tmpl.en_instruction;

  gateway::CompletionRequest req;
  req.messages = {{gateway::Role::user, std::move(body)}};
  req.max_output_tokens = 64;
  req.temperature = 0;
  req.request_tag = request_tag(item);
  return req;
}

std::optional<std::size_t> extract_answer(std::string_view completion,
                                          const std::vector<std::string>& options) {
  if (options.empty()) return std::nullopt;
  if (auto i = leading_letter(completion, options.size())) return i;
  if (auto i = answer_phrase(std::string(completion), options.size())) return i;
  return option_text(completion, options);
}

}  // namespace medforge::eval
