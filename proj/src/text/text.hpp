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

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gapsum::text {

// Rule-based segmentation knobs. Both lists are config-loadable
// (JSON keys `sentence_terminators` and `abbreviations`).
struct TextConfig {
  std::vector<std::string> sentence_terminators;
  std::vector<std::string> abbreviations;

  static TextConfig Defaults();
};

struct Sentence {
  std::size_t index = 0;
  std::string text;
  std::vector<std::string> tokens;
};

// A normalized, segmented, tokenized text. `raw_text` holds the normalized
// form, so joining sentence texts with single spaces reproduces it exactly.
struct Document {
  std::string id;
  std::string raw_text;
  std::vector<Sentence> sentences;

  static Document Make(std::string id, std::string_view text,
                       const TextConfig& config = TextConfig::Defaults());

  std::vector<std::string> AllTokens() const;
};

// Unicode cleanup: maps Arabic presentation variants to their Persian forms
// (Yeh, Kaf, Arabic-Indic digits), strips zero-width space and BOM, and
// collapses every whitespace run to a single space. ZWNJ (U+200C) is regular
// Persian orthography and passes through untouched. Total function.
std::string Normalize(std::string_view input);

// Splits normalized text at terminator runs, terminator attached to the
// preceding sentence. Abbreviation periods and decimal points do not split.
// Text without any terminator comes back as one sentence.
std::vector<Sentence> SplitSentences(
    std::string_view normalized_text,
    const TextConfig& config = TextConfig::Defaults());

// Whitespace split, then leading/trailing punctuation peeled off into
// standalone tokens. Lowercases Latin letters only.
std::vector<std::string> Tokenize(std::string_view normalized_text);

bool IsSpaceCp(char32_t cp);
bool IsPunctCp(char32_t cp);

// Number of non-punctuation tokens ("words" for the short-sentence rule).
std::size_t CountWords(const std::vector<std::string>& tokens);

std::string JoinWithSpace(const std::vector<std::string>& parts);

}  // namespace gapsum::text
