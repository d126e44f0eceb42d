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
// Summarization evaluation metrics: ROUGE-1/2/L, embedding-based P/R/F1,
// extractive fragment density/coverage, and entity-level factual
// consistency.

#ifndef GAPSUM_METRICS_METRICS_HPP_
#define GAPSUM_METRICS_METRICS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "scoring/scoring.hpp"
#include "text/text.hpp"

namespace gapsum::metrics {

using scoring::TokenSpan;

struct PrfScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Clipped n-gram multiset overlap; zero denominators yield 0.
PrfScore RougeN(TokenSpan candidate, TokenSpan reference, std::size_t n);

// Longest-common-subsequence ROUGE.
PrfScore RougeL(TokenSpan candidate, TokenSpan reference);

// Greedy token-matching score over static vectors; same contract as
// scoring::EmbeddingF1 (it is the same implementation).
scoring::EmbeddingScores EmbedScore(TokenSpan candidate, TokenSpan reference,
                                    const embedding::EmbeddingTable& table);

// One shared fragment, or a single novel summary token when length == 0
// (start_in_article is meaningless then and set to kNoArticlePos).
struct Fragment {
  std::size_t start_in_article = 0;
  std::size_t start_in_summary = 0;
  std::size_t length = 0;
};

inline constexpr std::size_t kNoArticlePos = static_cast<std::size_t>(-1);

// Greedy left-to-right scan over the summary. At each position the longest
// match starting anywhere in the article wins (ties to the earliest article
// start); unmatched tokens become length-0 fragments. The fragments tile
// the summary.
std::vector<Fragment> ExtractiveFragments(TokenSpan article, TokenSpan summary);

struct DensityCoverageResult {
  double density = 0.0;
  double coverage = 0.0;
};

// coverage = (1/|S|) sum |f|, density = (1/|S|) sum |f|^2.
// Throws std::invalid_argument when summary_len is 0.
DensityCoverageResult DensityCoverage(const std::vector<Fragment>& fragments,
                                      std::size_t summary_len);

struct FactualScores {
  double precision_source = 0.0;
  double f1_target = 0.0;
};

using EntitySet = std::unordered_set<std::string>;

// precision_source = |H ∩ S| / |H| (1.0 for empty H: an empty hypothesis
// asserts nothing false); f1_target = harmonic mean of |H ∩ R|/|H| and
// |H ∩ R|/|R|, zero-guarded.
FactualScores FactualConsistency(const EntitySet& source,
                                 const EntitySet& reference,
                                 const EntitySet& hypothesis);

struct EntityTriple {
  EntitySet source;
  EntitySet reference;
  EntitySet hypothesis;
};

struct MetricReport {
  PrfScore rouge1;
  PrfScore rouge2;
  PrfScore rougeL;
  std::optional<scoring::EmbeddingScores> embed;
  double density = 0.0;
  double coverage = 0.0;
  std::optional<FactualScores> factual;
};

// Scores one (article, reference, hypothesis) triple. ROUGE and embedding
// scores compare hypothesis against reference; density/coverage measure the
// hypothesis against the article. Throws std::invalid_argument when the
// hypothesis or reference has no tokens.
MetricReport EvaluatePair(const text::Document& article,
                          const text::Document& reference,
                          const text::Document& hypothesis,
                          const embedding::EmbeddingTable* table = nullptr,
                          const EntityTriple* entities = nullptr);

// Arithmetic-mean aggregation of per-example reports. Optional fields are
// averaged over the examples that carried them.
class CorpusAccumulator {
 public:
  void Add(const MetricReport& report);
  std::size_t count() const { return count_; }
  // Mean report; zeroed when empty.
  MetricReport Mean() const;

 private:
  MetricReport sums_;
  std::size_t count_ = 0;
  std::size_t embed_count_ = 0;
  std::size_t factual_count_ = 0;
};

}  // namespace gapsum::metrics

#endif  // GAPSUM_METRICS_METRICS_HPP_
