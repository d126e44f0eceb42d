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
// Top sentence selection: rank every sentence of a document against the
// rest of the document and keep the highest-scoring ones as the pseudo
// summary, splitting the document into (text, summary).

#ifndef GAPSUM_SELECTION_SELECTION_HPP_
#define GAPSUM_SELECTION_SELECTION_HPP_

#include <cstddef>
#include <vector>

#include "scoring/scoring.hpp"
#include "text/text.hpp"

namespace gapsum::selection {

struct SelectionResult {
  // One score per sentence, in document order.
  std::vector<double> scores;
  // Selected sentence indices in ascending document order; |selected| == m.
  std::vector<std::size_t> selected;
  std::size_t m = 0;
  // True when semantic scoring degenerated on every sentence and the
  // selection silently fell back to ROUGE1-F1.
  bool used_fallback = false;
  scoring::ScoreKind kind_used = scoring::ScoreKind::kRouge1F1;
};

struct DocumentSplit {
  std::vector<text::Sentence> text;     // unselected sentences, document order
  std::vector<text::Sentence> summary;  // selected sentences, document order
};

// Selection budget: round-half-up of ratio * sentence_count, at least 1,
// and never the whole document (capped at sentence_count - 1 when the
// document has two or more sentences).
// Throws std::invalid_argument unless sentence_count >= 1 and 0 < ratio <= 1.
std::size_t ComputeBudget(std::size_t sentence_count, double ratio);

// Scores all sentences with the requested score function and picks the
// top-m by score, ties broken toward the earlier sentence.  Equivalent to
// sorting indices by (-score, index) and taking the first m.
// Throws std::invalid_argument for documents with fewer than two sentences.
SelectionResult SelectTopSentences(
    const text::Document& doc, scoring::ScoreKind kind, double ratio,
    const embedding::EmbeddingTable* table = nullptr);

// Partitions the document's sentences into (text, summary) per the
// selection; both halves preserve document order.
DocumentSplit SplitDocument(const text::Document& doc,
                            const SelectionResult& selection);

}  // namespace gapsum::selection

#endif  // GAPSUM_SELECTION_SELECTION_HPP_
