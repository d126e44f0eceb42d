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

#include "selection/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gapsum::selection {

std::size_t ComputeBudget(std::size_t sentence_count, double ratio) {
  if (sentence_count < 1) {
    throw std::invalid_argument("ComputeBudget: sentence_count must be >= 1");
  }
  if (!(ratio > 0.0) || ratio > 1.0) {
    throw std::invalid_argument("ComputeBudget: ratio must be in (0, 1]");
  }
  // Round half up; budgets are small enough that double is exact here.
  const auto rounded = static_cast<std::size_t>(
      std::floor(ratio * static_cast<double>(sentence_count) + 0.5));
  std::size_t m = std::max<std::size_t>(1, rounded);
  if (sentence_count >= 2) m = std::min(m, sentence_count - 1);
  return m;
}

SelectionResult SelectTopSentences(const text::Document& doc,
                                   scoring::ScoreKind kind, double ratio,
                                   const embedding::EmbeddingTable* table) {
  const std::size_t n = doc.sentences.size();
  if (n < 2) {
    throw std::invalid_argument(
        "SelectTopSentences: document must have at least two sentences");
  }

  SelectionResult result;
  result.kind_used = kind;
  std::vector<scoring::SentenceScore> scored =
      scoring::ScoreAllSentences(doc, kind, table);

  if (kind == scoring::ScoreKind::kEmbeddingF1) {
    const bool all_degenerate =
        std::all_of(scored.begin(), scored.end(),
                    [](const scoring::SentenceScore& s) { return s.degenerate; });
    if (all_degenerate) {
      // Nothing to rank on; ROUGE keeps the pipeline total.
      scored = scoring::ScoreAllSentences(doc, scoring::ScoreKind::kRouge1F1,
                                          nullptr);
      result.used_fallback = true;
      result.kind_used = scoring::ScoreKind::kRouge1F1;
    }
  }

  result.scores.reserve(n);
  for (const auto& s : scored) result.scores.push_back(s.value);

  result.m = ComputeBudget(n, ratio);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (result.scores[a] != result.scores[b]) {
      return result.scores[a] > result.scores[b];
    }
    return a < b;
  });
  result.selected.assign(order.begin(), order.begin() + result.m);
  std::sort(result.selected.begin(), result.selected.end());
  return result;
}

DocumentSplit SplitDocument(const text::Document& doc,
                            const SelectionResult& selection) {
  DocumentSplit split;
  std::vector<bool> chosen(doc.sentences.size(), false);
  for (const std::size_t i : selection.selected) {
    if (i >= doc.sentences.size()) {
      throw std::invalid_argument("SplitDocument: selected index out of range");
    }
    chosen[i] = true;
  }
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    (chosen[i] ? split.summary : split.text).push_back(doc.sentences[i]);
  }
  return split;
}

}  // namespace gapsum::selection
