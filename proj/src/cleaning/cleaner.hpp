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
//
// Corpus cleaning. Per record, in order: sentence-level rules (short
// sentence, missing terminator, blacklisted keyword), rejection of
// documents left with too few sentences, language filtering, and
// within-document paragraph deduplication.

#ifndef GAPSUM_CLEANING_CLEANER_HPP_
#define GAPSUM_CLEANING_CLEANER_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "text/text.hpp"

namespace gapsum::cleaning {

struct CleaningConfig {
  std::size_t min_words_per_sentence = 5;
  std::size_t min_sentences = 3;
  // Case-sensitive substrings; one hit drops the sentence. The default list
  // is a stand-in for common web boilerplate and is config-replaceable.
  std::vector<std::string> blacklist;
  std::string target_language = "fa";
  double language_threshold = 0.99;
  text::TextConfig text_config;

  static CleaningConfig Defaults();
};

// Returns p(language | text), or nullopt when identification failed.
// Failure keeps the document (fail-open): silently dropping on an
// infrastructure error would bias the corpus.
using LanguageProbe = std::function<std::optional<double>(
    std::string_view text, const std::string& language)>;

// Probe backed by the built-in trigram classifier.
LanguageProbe BuiltInLanguageProbe();

struct CleaningReport {
  std::uint64_t docs_in = 0;
  std::uint64_t docs_out = 0;
  std::uint64_t sentences_dropped_short = 0;
  std::uint64_t sentences_dropped_terminator = 0;
  std::uint64_t sentences_dropped_blacklist = 0;
  std::uint64_t rejected_too_few_sentences = 0;
  std::uint64_t non_target_language_docs = 0;
  std::uint64_t duplicates_removed = 0;
  std::uint64_t language_flagged_kept = 0;
  std::uint64_t unreadable_records = 0;

  void Merge(const CleaningReport& other);
};

struct CleanOutcome {
  bool kept = false;
  // Surviving paragraphs joined with '\n'; empty when rejected.
  std::string cleaned_text;
  // Counts for this record alone (docs_in == 1); merge into a run report.
  CleaningReport report;
};

struct SentenceFilterResult {
  std::vector<std::string> kept;  // normalized sentence texts
  std::uint64_t dropped_short = 0;
  std::uint64_t dropped_terminator = 0;
  std::uint64_t dropped_blacklist = 0;
};

// Sentence rules over one normalized paragraph. Rules apply in the fixed
// order short -> terminator -> blacklist; the first hit is the one counted.
SentenceFilterResult FilterSentences(std::string_view normalized_paragraph,
                                     const CleaningConfig& cfg);

// Exact-match dedup after normalization, first occurrence wins. Inputs are
// already-normalized paragraph texts; `removed` reports how many went away.
std::vector<std::string> DeduplicateParagraphs(
    const std::vector<std::string>& paragraphs, std::uint64_t* removed);

// The full per-record pipeline. `raw_text` may contain '\n' paragraph
// breaks; they are preserved in the output. A null probe skips the
// language filter.
CleanOutcome CleanRecord(std::string_view raw_text, const CleaningConfig& cfg,
                         const LanguageProbe& probe);

}  // namespace gapsum::cleaning

#endif  // GAPSUM_CLEANING_CLEANER_HPP_
