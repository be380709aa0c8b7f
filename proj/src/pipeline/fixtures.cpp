// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/pipeline/fixtures.hpp"

#include <fmt/format.h>

#include "medforge/eval/prompt.hpp"
#include "medforge/translate/protocol.hpp"

namespace medforge::pipeline {

namespace {

struct Vignette {
  const char* presentation;
  const char* condition;
  const char* answer;
  const char* distractors[3];
};

const Vignette kVignettes[] = {
    {"fatigue, pallor and a low serum ferritin", "iron deficiency anaemia", "Oral ferrous sulfate",
     {"Intramuscular vitamin B12", "Oral folic acid", "Red cell transfusion"}},
    {"crushing chest pain with ST elevation in leads II, III and aVF", "an inferior myocardial infarction",
     "Primary percutaneous coronary intervention",
     {"Oral amoxicillin", "Observation at home", "Intravenous furosemide"}},
    {"polyuria, polydipsia and a fasting glucose of 9.1 mmol/L", "type 2 diabetes", "Metformin",
     {"Levothyroxine", "Prednisolone", "Digoxin"}},
    {"a hot, swollen and very painful first metatarsophalangeal joint", "acute gout", "Naproxen",
     {"Starting allopurinol during the attack", "Amoxicillin", "Methotrexate"}},
    {"sudden swelling of one calf after a long-haul flight", "deep vein thrombosis",
     "Compression ultrasound of the leg", {"Chest radiograph", "Serum amylase", "Knee arthroscopy"}},
    {"fever, neck stiffness and photophobia", "bacterial meningitis", "Intravenous ceftriaxone",
     {"Oral paracetamol alone", "Topical corticosteroid", "Oral antihistamine"}},
    {"wheeze and a night-time cough that settle with salbutamol", "asthma", "An inhaled corticosteroid",
     {"Oral propranolol", "Codeine linctus", "Long-term oral antibiotics"}},
    {"heat intolerance, weight loss and a fine tremor", "hyperthyroidism", "Serum TSH and free T4",
     {"Serum lipase", "Urine culture", "Lumbar puncture"}},
    {"burning epigastric pain that eases after meals", "a duodenal ulcer", "Testing for Helicobacter pylori",
     {"Colonoscopy", "Plain abdominal radiograph", "Liver biopsy"}},
    {"dysuria and urinary frequency without fever", "uncomplicated cystitis", "Nitrofurantoin",
     {"Intravenous vancomycin", "Oral prednisolone", "Tamsulosin"}},
    {"a blood pressure of 162/98 mmHg on repeated readings", "hypertension", "Amlodipine",
     {"Salbutamol", "Warfarin", "Omeprazole"}},
    {"a honey-coloured crusted rash around the mouth", "impetigo", "Topical fusidic acid",
     {"Oral aciclovir", "Topical clotrimazole", "Oral isotretinoin"}},
};

constexpr int kAges[] = {24, 37, 45, 58, 66};
constexpr const char* kPeople[] = {"woman", "man", "woman", "man", "woman"};

constexpr std::size_t kVignetteCount = std::size(kVignettes);

// Options with the answer rotated into slot `gold`.
std::vector<std::string> arrange(const Vignette& v, std::size_t gold) {
  std::vector<std::string> out;
  std::size_t d = 0;
  for (std::size_t i = 0; i < 4; ++i) out.push_back(i == gold ? v.answer : v.distractors[d++]);
  return out;
}

const Vignette& vignette_for(const chat::McqaItem& item) {
  for (const auto& v : kVignettes) {
    if (item.question.find(v.presentation) != std::string::npos) return v;
  }
  return kVignettes[0];
}

std::string chat_text(const chat::McqaItem& item, std::size_t i) {
  const auto& v = vignette_for(item);
  const std::string answer = item.options[item.gold_index()].text;
  std::string out = fmt::format(
      "Patient: Doctor, I have been dealing with {} and it is starting to worry me.\n"
      "Doctor: Thank you for telling me. How long has this been going on, and has anything made it "
      "better or worse?\n",
      v.presentation);
  if (i % 2 == 1) {
    out += "Patient: About two weeks. I have not taken anything for it yet.\n"
           "Doctor: Do you have any other medical conditions, or take any regular medicines?\n";
  }
  out += fmt::format(
      "Patient: No, nothing else. What do you think is going on?\n"
      "Doctor: Your symptoms fit {}. The most appropriate next step is {}, and we will review you "
      "afterwards to make sure things are improving.\n[END]\n",
      v.condition, answer.empty() ? answer : std::string(1, static_cast<char>(std::tolower(answer[0]))) + answer.substr(1));
  return out;
}

std::string pseudo_arabic(const translate::Fields& english, const std::string& marker) {
  translate::Fields ar;
  for (const auto& f : english) ar.push_back({f.name, marker + " " + f.text});
  return translate::encode_fields(ar);
}

}  // namespace

Fixtures demo_fixtures() {
  Fixtures fx;
  for (std::size_t n = 0; n < 5 * kVignetteCount; ++n) {
    const auto& v = kVignettes[n % kVignetteCount];
    const std::size_t variant = n / kVignetteCount;
    const std::size_t gold = n % 4;
    const auto opts = arrange(v, gold);
    fx.mcqa_lines.push_back({{"question", fmt::format("A {}-year-old {} presents with {}. Which of the "
                                                      "following is the most appropriate next step?",
                                                      kAges[variant], kPeople[variant], v.presentation)},
                             {"opa", opts[0]},
                             {"opb", opts[1]},
                             {"opc", opts[2]},
                             {"opd", opts[3]},
                             {"cop", gold}});
  }
  const char* qa_forms[][2] = {
      {"What is usually done first for {condition}?",
       "{answer} is usually the first step for {condition}. A clinician should confirm the diagnosis "
       "and tailor treatment."},
      {"I have {presentation}. What could be causing it?",
       "Those symptoms can be caused by {condition}. Please see a doctor, who may recommend {answer_lc}."},
      {"Is {answer_lc} used for {condition}?",
       "Yes. {answer} is a standard option for {condition}, although the right choice depends on your "
       "history."},
      {"Should I be worried about {presentation}?",
       "It deserves medical attention because it can point to {condition}. A doctor can decide whether "
       "{answer_lc} is needed."},
  };
  for (std::size_t n = 0; n < 40; ++n) {
    const auto& v = kVignettes[n % kVignetteCount];
    const auto& form = qa_forms[n / kVignetteCount];
    std::string answer_lc = v.answer;
    answer_lc[0] = static_cast<char>(std::tolower(answer_lc[0]));
    auto fill = [&](const char* t) {
      return fmt::format(fmt::runtime(t), fmt::arg("condition", v.condition), fmt::arg("answer", v.answer),
                         fmt::arg("answer_lc", answer_lc), fmt::arg("presentation", v.presentation));
    };
    fx.qa_lines.push_back({{"question", fill(form[0])}, {"answer", fill(form[1])}});
  }
  std::size_t k = 0;
  for (auto d : eval::kAllDatasets) {
    for (std::size_t j = 0; j < 4; ++j, ++k) {
      const auto& v = kVignettes[k % kVignetteCount];
      eval::BenchmarkItem item;
      item.item_id = fmt::format("{}-{:03d}", eval::to_string(d), j + 1);
      item.dataset = d;
      item.language = eval::Language::en;
      if (d == eval::Dataset::PubMedQA) {
        item.gold_index = j % 3;
        static const char* kFindings[] = {"clearly improved", "did not change", "had mixed effects on"};
        item.context = fmt::format("In a cohort of adults with {}, {} {} outcomes at twelve weeks.",
                                   v.condition, v.answer, kFindings[item.gold_index]);
        item.question = fmt::format("Does {} improve outcomes in {}?", v.answer, v.condition);
        item.options = {"yes", "no", "maybe"};
      } else {
        item.gold_index = j;
        item.question = fmt::format("A patient presents with {}. Which of the following is the most "
                                    "appropriate next step?",
                                    v.presentation);
        item.options = arrange(v, j);
      }
      fx.benchmark_en.push_back(std::move(item));
    }
  }
  return fx;
}

void add_chat_script(gateway::Script& script, const std::vector<chat::McqaItem>& items) {
  using gateway::ScriptedResponse;
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto& seq = script[items[i].item_id + "/chat"];
    const std::string good = chat_text(items[i], i);
    if (i % 5 == 2) {
      seq.push_back(ScriptedResponse::ok("Doctor: Hello, what brings you in today?\nPatient: I feel unwell.\n[END]"));
    } else if (i % 7 == 3) {
      seq.push_back(ScriptedResponse::cut(good.substr(0, good.size() / 2)));
    }
    seq.push_back(ScriptedResponse::ok(good));
  }
}

const std::vector<std::vector<int>>& demo_score_patterns() {
  static const std::vector<std::vector<int>> patterns = {
      {92}, {65, 84}, {55, 70, 88}, {50, 62, 71}, {80}, {85}, {40, 58, 66}};
  return patterns;
}

void add_translation_script(gateway::Script& script, const std::vector<translate::TranslationUnit>& units,
                            bool always_pass) {
  using gateway::ScriptedResponse;
  const auto& patterns = demo_score_patterns();
  for (std::size_t i = 0; i < units.size(); ++i) {
    const auto& u = units[i];
    const auto& scores = always_pass ? patterns[0] : patterns[i % patterns.size()];
    auto& tr = script[u.unit_id + "/translate/1"];
    if (i % 10 == 9) tr.push_back(ScriptedResponse::fail());
    tr.push_back(ScriptedResponse::ok(pseudo_arabic(u.english_fields, "ترجمة:")));
    for (std::size_t r = 0; r < scores.size(); ++r) {
      const int round = static_cast<int>(r) + 1;
      script[fmt::format("{}/score/{}", u.unit_id, round)].push_back(ScriptedResponse::ok(
          fmt::format("Score: {}/100\nRationale: {}", scores[r],
                      scores[r] >= 80 ? "faithful and fluent." : "terminology needs work.")));
      if (r + 1 < scores.size()) {
        script[fmt::format("{}/refine/{}", u.unit_id, round + 1)].push_back(
            ScriptedResponse::ok(pseudo_arabic(u.english_fields, fmt::format("ترجمة منقحة {}:", round + 1))));
      }
    }
  }
}

}  // namespace medforge::pipeline
