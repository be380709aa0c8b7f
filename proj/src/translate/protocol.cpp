// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/translate/protocol.hpp"

#include <regex>

#include "medforge/common/error.hpp"
#include "medforge/common/io.hpp"
#include "medforge/common/templates.hpp"
#include "medforge/common/utf8.hpp"

namespace medforge::translate {

namespace {

const std::regex& sentinel_re() {
  static const std::regex re(R"(<<<\s*(\d+)\s*(?:\|[^>\n]*)?>>>)");
  return re;
}

}  // namespace

std::string encode_fields(const Fields& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += '\n';
    out += "<<<" + std::to_string(i + 1) + "|" + fields[i].name + ">>>\n";
    out += fields[i].text;
  }
  return out;
}

Fields decode_fields(std::string_view response, const Fields& reference) {
  std::string text(response);
  std::vector<std::pair<int, std::size_t>> marks;  // index, start of its body
  std::vector<std::size_t> mark_starts;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), sentinel_re());
       it != std::sregex_iterator(); ++it) {
    marks.emplace_back(std::stoi((*it)[1].str()), static_cast<std::size_t>(it->position() + it->length()));
    mark_starts.push_back(static_cast<std::size_t>(it->position()));
  }
  if (marks.size() != reference.size()) {
    throw AlignmentError("expected " + std::to_string(reference.size()) + " segments, got " +
                         std::to_string(marks.size()));
  }
  Fields out;
  out.reserve(reference.size());
  for (std::size_t i = 0; i < marks.size(); ++i) {
    if (marks[i].first != static_cast<int>(i + 1)) {
      throw AlignmentError("segment " + std::to_string(i + 1) + " is labelled " +
                           std::to_string(marks[i].first));
    }
    std::size_t end = i + 1 < marks.size() ? mark_starts[i + 1] : text.size();
    auto body = trim(std::string_view(text).substr(marks[i].second, end - marks[i].second));
    if (body.empty()) throw AlignmentError("segment " + std::to_string(i + 1) + " is empty");
    out.push_back({reference[i].name, std::string(body)});
  }
  return out;
}

PromptTemplates PromptTemplates::defaults() {
  PromptTemplates t;
  t.translate =
      "Translate the English medical record below into Modern Standard Arabic. Read all blocks "
      "first and translate them as one document, keeping clinical terminology, drug names, doses, "
      "numbers and units exact.\n"
      "Answer with the same numbered <<<n|name>>> markers, in the same order, each followed by "
      "its Arabic translation. Do not add anything else.\n\n"
      "{english}\n";
  t.score =
      "Compare the Arabic translation with its English original and grade it from 0 to 100, "
      "where 100 means a faithful, clear translation that keeps every technical term and "
      "specific detail.\n"
      "Answer exactly as: Score: <0-100>. <one sentence explaining the grade>\n\n"
      "English:\n{english}\n\nArabic:\n{arabic}\n";
  t.refine =
      "The Arabic translation below was graded {score}/100 against its English original. "
      "Revise it so it is consistent with and aligned to the English, fixing terminology and "
      "omissions.\n"
      "Answer with the same numbered <<<n|name>>> markers, in the same order, each followed by "
      "the revised Arabic text. Do not add anything else.\n\n"
      "English:\n{english}\n\nCurrent Arabic:\n{arabic}\n";
  return t;
}

void PromptTemplates::validate() const {
  render_template(translate, {}, {"english"});
  render_template(score, {}, {"english", "arabic"});
  render_template(refine, {}, {"english", "arabic", "score"});
}

PromptTemplates PromptTemplates::load(const std::filesystem::path& dir) {
  PromptTemplates t = defaults();
  auto maybe = [&](const char* name, std::string& slot) {
    auto p = dir / name;
    if (std::filesystem::exists(p)) slot = read_template(p);
  };
  maybe("translate.txt", t.translate);
  maybe("score.txt", t.score);
  maybe("refine.txt", t.refine);
  t.validate();
  return t;
}

QualityScore parse_score(std::string_view response, std::string scorer_tag) {
  std::string text(response);
  auto in_range = [](const std::string& digits) {
    return digits.size() <= 3 && std::stoi(digits) <= 100;
  };

  std::size_t number_end = std::string::npos;
  int value = -1;

  static const std::regex labelled(R"(score\s*(?:[:=]|is|of)?\s*(\d+))", std::regex::icase);
  std::smatch m;
  if (std::regex_search(text, m, labelled) && in_range(m[1].str())) {
    value = std::stoi(m[1].str());
    number_end = static_cast<std::size_t>(m.position(1) + m.length(1));
  } else {
    static const std::regex bare(R"(\d+)");
    for (auto it = std::sregex_iterator(text.begin(), text.end(), bare); it != std::sregex_iterator(); ++it) {
      if (in_range(it->str())) {
        value = std::stoi(it->str());
        number_end = static_cast<std::size_t>(it->position() + it->length());
        break;
      }
    }
  }
  if (value < 0) throw ScoreParseError("no score in [0, 100] found in: " + std::string(trim(text)).substr(0, 200));

  std::string_view rest = std::string_view(text).substr(number_end);
  if (rest.starts_with("/100")) rest.remove_prefix(4);
  while (!rest.empty() && std::string_view(" \t\r\n.:;,-)").find(rest.front()) != std::string_view::npos) {
    rest.remove_prefix(1);
  }
  std::string rationale(trim(rest));
  if (rationale.empty()) rationale = std::string(trim(text));
  return {value, std::move(rationale), std::move(scorer_tag)};
}

}  // namespace medforge::translate
