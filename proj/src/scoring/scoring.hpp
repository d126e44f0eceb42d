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

#include <span>
#include <string>
#include <vector>

#include "embedding/embedding_table.hpp"
#include "text/text.hpp"

namespace gapsum::scoring {

enum class ScoreKind {
  kRouge1F1,      // syntactic: unigram-overlap F1
  kEmbeddingF1,   // semantic: greedy max-similarity F1 over word vectors
};

struct EmbeddingScores {
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
  // True when one side had no in-vocabulary token, so the score carries no
  // signal and callers should fall back deterministically.
  bool degenerate = false;
};

using TokenSpan = std::span<const std::string>;

// Unigram F1 with multiset clipping. Empty sides and zero overlaps yield 0.
double Rouge1F1(TokenSpan candidate, TokenSpan reference);

// Greedy max matching over unit word vectors: recall averages, over the
// reference tokens, the best dot product against any candidate token;
// precision is the mirror image; f1 the zero-guarded harmonic mean.
// OOV tokens under the skip policy drop out of both the max and the mean.
EmbeddingScores EmbeddingF1(TokenSpan candidate, TokenSpan reference,
                            const embedding::EmbeddingTable& table);

struct SentenceScore {
  double value = 0.0;
  bool degenerate = false;
};

// Scores sentence i against the rest of the document: candidate is the
// sentence, reference the concatenation of every other sentence in order.
// Throws std::invalid_argument when the document has fewer than two
// sentences or the index is out of range.
SentenceScore ScoreSentence(const text::Document& doc, std::size_t index,
                            ScoreKind kind,
                            const embedding::EmbeddingTable* table);

// Scores every sentence of the document at once. Exactly equivalent to
// calling ScoreSentence per index, but shares the per-document work.
std::vector<SentenceScore> ScoreAllSentences(
    const text::Document& doc, ScoreKind kind,
    const embedding::EmbeddingTable* table);

}  // namespace gapsum::scoring
