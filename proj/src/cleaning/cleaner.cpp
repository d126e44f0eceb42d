// Copyright 2026 The gapsum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cleaning/cleaner.hpp"

#include <unordered_set>

#include "cleaning/langid.hpp"

namespace gapsum::cleaning {

namespace {

bool EndsWithTerminator(const std::string& sentence,
                        const std::vector<std::string>& terminators) {
  for (const std::string& t : terminators) {
    if (sentence.size() >= t.size() &&
        sentence.compare(sentence.size() - t.size(), t.size(), t) == 0) {
      return true;
    }
  }
  return false;
}

bool HitsBlacklist(const std::string& sentence,
                   const std::vector<std::string>& blacklist) {
  for (const std::string& word : blacklist) {
    if (!word.empty() && sentence.find(word) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

CleaningConfig CleaningConfig::Defaults() {
  CleaningConfig cfg;
  cfg.text_config = text::TextConfig::Defaults();
  cfg.blacklist = {
      "&nbsp;",          "&amp;",           "&quot;",
      "<script",         "<div",            "<span",
      "</",              "javascript",      "document.write",
      "window.location", "function(",       "style=",
      "http://",         "https://",        "لینک کوتاه",
      "ادامه مطلب",      "برچسب‌ها",         "کلیک کنید",
  };
  return cfg;
}

void CleaningReport::Merge(const CleaningReport& other) {
  docs_in += other.docs_in;
  docs_out += other.docs_out;
  sentences_dropped_short += other.sentences_dropped_short;
  sentences_dropped_terminator += other.sentences_dropped_terminator;
  sentences_dropped_blacklist += other.sentences_dropped_blacklist;
  rejected_too_few_sentences += other.rejected_too_few_sentences;
  non_target_language_docs += other.non_target_language_docs;
  duplicates_removed += other.duplicates_removed;
  language_flagged_kept += other.language_flagged_kept;
  unreadable_records += other.unreadable_records;
}

LanguageProbe BuiltInLanguageProbe() {
  return [](std::string_view text,
            const std::string& language) -> std::optional<double> {
    return TrigramLanguageId::BuiltIn().Probability(text, language);
  };
}

SentenceFilterResult FilterSentences(std::string_view normalized_paragraph,
                                     const CleaningConfig& cfg) {
  SentenceFilterResult out;
  for (text::Sentence& s :
       text::SplitSentences(normalized_paragraph, cfg.text_config)) {
    if (text::CountWords(s.tokens) < cfg.min_words_per_sentence) {
      ++out.dropped_short;
      continue;
    }
    if (!EndsWithTerminator(s.text, cfg.text_config.sentence_terminators)) {
      ++out.dropped_terminator;
      continue;
    }
    if (HitsBlacklist(s.text, cfg.blacklist)) {
      ++out.dropped_blacklist;
      continue;
    }
    out.kept.push_back(std::move(s.text));
  }
  return out;
}

std::vector<std::string> DeduplicateParagraphs(
    const std::vector<std::string>& paragraphs, std::uint64_t* removed) {
  std::vector<std::string> out;
  out.reserve(paragraphs.size());
  std::unordered_set<std::string> seen;
  for (const std::string& p : paragraphs) {
    if (seen.insert(p).second) {
      out.push_back(p);
    } else if (removed != nullptr) {
      ++*removed;
    }
  }
  return out;
}

CleanOutcome CleanRecord(std::string_view raw_text, const CleaningConfig& cfg,
                         const LanguageProbe& probe) {
  CleanOutcome outcome;
  outcome.report.docs_in = 1;

  // Paragraph boundaries live in the raw text only; normalization collapses
  // them, so split first and normalize per paragraph.
  struct Paragraph {
    std::string text;
    std::size_t sentence_count = 0;
  };
  std::vector<Paragraph> paragraphs;
  std::size_t total_sentences = 0;

  std::size_t pos = 0;
  while (pos <= raw_text.size()) {
    const std::size_t nl = raw_text.find('\n', pos);
    const std::string_view chunk =
        raw_text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? raw_text.size() + 1 : nl + 1;

    const std::string normalized = text::Normalize(chunk);
    if (normalized.empty()) continue;
    SentenceFilterResult filtered = FilterSentences(normalized, cfg);
    outcome.report.sentences_dropped_short += filtered.dropped_short;
    outcome.report.sentences_dropped_terminator += filtered.dropped_terminator;
    outcome.report.sentences_dropped_blacklist += filtered.dropped_blacklist;
    if (filtered.kept.empty()) continue;
    Paragraph p;
    p.sentence_count = filtered.kept.size();
    p.text = text::JoinWithSpace(filtered.kept);
    total_sentences += p.sentence_count;
    paragraphs.push_back(std::move(p));
  }

  if (total_sentences < cfg.min_sentences) {
    outcome.report.rejected_too_few_sentences = 1;
    return outcome;
  }

  if (probe) {
    std::string full_text;
    for (const Paragraph& p : paragraphs) {
      if (!full_text.empty()) full_text += ' ';
      full_text += p.text;
    }
    const std::optional<double> p_target =
        probe(full_text, cfg.target_language);
    if (!p_target.has_value()) {
      outcome.report.language_flagged_kept = 1;  // fail open
    } else if (*p_target < cfg.language_threshold) {
      outcome.report.non_target_language_docs = 1;
      return outcome;
    }
  }

  std::vector<std::string> texts;
  texts.reserve(paragraphs.size());
  for (const Paragraph& p : paragraphs) texts.push_back(p.text);
  const std::vector<std::string> unique =
      DeduplicateParagraphs(texts, &outcome.report.duplicates_removed);

  // Dedup can push a document back under the sentence minimum; re-checking
  // here keeps cleaning idempotent.
  std::size_t surviving_sentences = 0;
  {
    std::unordered_set<std::string_view> counted;
    for (const Paragraph& p : paragraphs) {
      if (counted.insert(p.text).second) surviving_sentences += p.sentence_count;
    }
  }
  if (surviving_sentences < cfg.min_sentences) {
    outcome.report.rejected_too_few_sentences = 1;
    return outcome;
  }

  outcome.kept = true;
  outcome.report.docs_out = 1;
  std::string joined;
  for (const std::string& u : unique) {
    if (!joined.empty()) joined += '\n';
    joined += u;
  }
  outcome.cleaned_text = std::move(joined);
  return outcome;
}

}  // namespace gapsum::cleaning
