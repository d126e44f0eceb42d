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

#include "metrics/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace gapsum::metrics {

namespace {

double HarmonicMean(double p, double r) {
  return (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

// n-gram key: tokens joined with an unlikely separator byte.
std::unordered_map<std::string, std::size_t> CountNgrams(TokenSpan tokens,
                                                         std::size_t n) {
  std::unordered_map<std::string, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (std::size_t j = 0; j < n; ++j) {
      if (j > 0) key += '\x1f';
      key += tokens[i + j];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

PrfScore RougeN(TokenSpan candidate, TokenSpan reference, std::size_t n) {
  if (n < 1) throw std::invalid_argument("RougeN: n must be >= 1");
  PrfScore out;
  if (candidate.size() < n || reference.size() < n) return out;
  const auto cand = CountNgrams(candidate, n);
  const auto ref = CountNgrams(reference, n);
  std::size_t overlap = 0;
  for (const auto& [gram, count] : cand) {
    const auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(count, it->second);
  }
  const std::size_t cand_total = candidate.size() - n + 1;
  const std::size_t ref_total = reference.size() - n + 1;
  out.precision = static_cast<double>(overlap) / cand_total;
  out.recall = static_cast<double>(overlap) / ref_total;
  out.f1 = HarmonicMean(out.precision, out.recall);
  return out;
}

PrfScore RougeL(TokenSpan candidate, TokenSpan reference) {
  PrfScore out;
  if (candidate.empty() || reference.empty()) return out;

  // LCS length with two rolling rows.
  std::vector<std::size_t> prev(reference.size() + 1, 0);
  std::vector<std::size_t> cur(reference.size() + 1, 0);
  for (std::size_t i = 1; i <= candidate.size(); ++i) {
    for (std::size_t j = 1; j <= reference.size(); ++j) {
      cur[j] = candidate[i - 1] == reference[j - 1]
                   ? prev[j - 1] + 1
                   : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  const std::size_t lcs = prev[reference.size()];
  out.precision = static_cast<double>(lcs) / candidate.size();
  out.recall = static_cast<double>(lcs) / reference.size();
  out.f1 = HarmonicMean(out.precision, out.recall);
  return out;
}

scoring::EmbeddingScores EmbedScore(TokenSpan candidate, TokenSpan reference,
                                    const embedding::EmbeddingTable& table) {
  return scoring::EmbeddingF1(candidate, reference, table);
}

std::vector<Fragment> ExtractiveFragments(TokenSpan article,
                                          TokenSpan summary) {
  std::unordered_map<std::string_view, std::vector<std::size_t>> positions;
  for (std::size_t a = 0; a < article.size(); ++a) {
    positions[article[a]].push_back(a);
  }

  std::vector<Fragment> fragments;
  std::size_t i = 0;
  while (i < summary.size()) {
    std::size_t best_len = 0;
    std::size_t best_start = kNoArticlePos;
    const auto it = positions.find(summary[i]);
    if (it != positions.end()) {
      for (const std::size_t a : it->second) {  // ascending: earliest tie wins
        std::size_t len = 0;
        while (i + len < summary.size() && a + len < article.size() &&
               article[a + len] == summary[i + len]) {
          ++len;
        }
        if (len > best_len) {
          best_len = len;
          best_start = a;
        }
      }
    }
    if (best_len > 0) {
      fragments.push_back({best_start, i, best_len});
      i += best_len;
    } else {
      fragments.push_back({kNoArticlePos, i, 0});
      i += 1;
    }
  }
  return fragments;
}

DensityCoverageResult DensityCoverage(const std::vector<Fragment>& fragments,
                                      std::size_t summary_len) {
  if (summary_len == 0) {
    throw std::invalid_argument("DensityCoverage: summary_len must be >= 1");
  }
  double len_sum = 0.0;
  double sq_sum = 0.0;
  for (const Fragment& f : fragments) {
    const auto len = static_cast<double>(f.length);
    len_sum += len;
    sq_sum += len * len;
  }
  return {sq_sum / static_cast<double>(summary_len),
          len_sum / static_cast<double>(summary_len)};
}

FactualScores FactualConsistency(const EntitySet& source,
                                 const EntitySet& reference,
                                 const EntitySet& hypothesis) {
  std::size_t in_source = 0;
  std::size_t in_reference = 0;
  for (const std::string& h : hypothesis) {
    if (source.count(h)) ++in_source;
    if (reference.count(h)) ++in_reference;
  }

  FactualScores out;
  out.precision_source =
      hypothesis.empty()
          ? 1.0
          : static_cast<double>(in_source) / hypothesis.size();
  const double p = hypothesis.empty()
                       ? 0.0
                       : static_cast<double>(in_reference) / hypothesis.size();
  const double r = reference.empty()
                       ? 0.0
                       : static_cast<double>(in_reference) / reference.size();
  out.f1_target = HarmonicMean(p, r);
  return out;
}

MetricReport EvaluatePair(const text::Document& article,
                          const text::Document& reference,
                          const text::Document& hypothesis,
                          const embedding::EmbeddingTable* table,
                          const EntityTriple* entities) {
  const std::vector<std::string> article_tokens = article.AllTokens();
  const std::vector<std::string> ref_tokens = reference.AllTokens();
  const std::vector<std::string> hyp_tokens = hypothesis.AllTokens();
  if (ref_tokens.empty() || hyp_tokens.empty()) {
    throw std::invalid_argument(
        "EvaluatePair: reference and hypothesis must be non-empty");
  }

  MetricReport report;
  report.rouge1 = RougeN(hyp_tokens, ref_tokens, 1);
  report.rouge2 = RougeN(hyp_tokens, ref_tokens, 2);
  report.rougeL = RougeL(hyp_tokens, ref_tokens);
  if (table != nullptr) {
    report.embed = EmbedScore(hyp_tokens, ref_tokens, *table);
  }
  const std::vector<Fragment> fragments =
      ExtractiveFragments(article_tokens, hyp_tokens);
  const DensityCoverageResult dc = DensityCoverage(fragments, hyp_tokens.size());
  report.density = dc.density;
  report.coverage = dc.coverage;
  if (entities != nullptr) {
    report.factual = FactualConsistency(entities->source, entities->reference,
                                        entities->hypothesis);
  }
  return report;
}

void CorpusAccumulator::Add(const MetricReport& report) {
  auto add_prf = [](PrfScore& sum, const PrfScore& v) {
    sum.precision += v.precision;
    sum.recall += v.recall;
    sum.f1 += v.f1;
  };
  add_prf(sums_.rouge1, report.rouge1);
  add_prf(sums_.rouge2, report.rouge2);
  add_prf(sums_.rougeL, report.rougeL);
  sums_.density += report.density;
  sums_.coverage += report.coverage;
  if (report.embed.has_value()) {
    if (!sums_.embed.has_value()) sums_.embed.emplace();
    sums_.embed->precision += report.embed->precision;
    sums_.embed->recall += report.embed->recall;
    sums_.embed->f1 += report.embed->f1;
    ++embed_count_;
  }
  if (report.factual.has_value()) {
    if (!sums_.factual.has_value()) sums_.factual.emplace();
    sums_.factual->precision_source += report.factual->precision_source;
    sums_.factual->f1_target += report.factual->f1_target;
    ++factual_count_;
  }
  ++count_;
}

MetricReport CorpusAccumulator::Mean() const {
  MetricReport mean;
  if (count_ == 0) return mean;
  const auto div_prf = [](const PrfScore& sum, std::size_t n) {
    const auto d = static_cast<double>(n);
    return PrfScore{sum.precision / d, sum.recall / d, sum.f1 / d};
  };
  mean.rouge1 = div_prf(sums_.rouge1, count_);
  mean.rouge2 = div_prf(sums_.rouge2, count_);
  mean.rougeL = div_prf(sums_.rougeL, count_);
  mean.density = sums_.density / static_cast<double>(count_);
  mean.coverage = sums_.coverage / static_cast<double>(count_);
  if (embed_count_ > 0) {
    const auto d = static_cast<double>(embed_count_);
    scoring::EmbeddingScores e;
    e.precision = sums_.embed->precision / d;
    e.recall = sums_.embed->recall / d;
    e.f1 = sums_.embed->f1 / d;
    mean.embed = e;
  }
  if (factual_count_ > 0) {
    const auto d = static_cast<double>(factual_count_);
    mean.factual = FactualScores{sums_.factual->precision_source / d,
                                 sums_.factual->f1_target / d};
  }
  return mean;
}

}  // namespace gapsum::metrics
