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

#include "scoring/scoring.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace gapsum::scoring {

namespace {

double HarmonicMean(double p, double r) {
  return (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

std::unordered_map<std::string_view, std::size_t> CountTokens(TokenSpan tokens) {
  std::unordered_map<std::string_view, std::size_t> counts;
  counts.reserve(tokens.size());
  for (const std::string& t : tokens) ++counts[t];
  return counts;
}

// Shared per-document state for the batch embedding path: distinct
// in-vocabulary tokens, their vectors, and the in-vocabulary token id
// sequence of every sentence in document order.  Keeping the sequences
// (not just counts) lets the batch path accumulate sums in exactly the
// order the per-sentence path does, so both paths agree bit for bit.
struct DocEmbeddingIndex {
  std::size_t dim = 0;
  std::vector<const double*> vectors;      // per distinct token
  std::vector<std::size_t> total_counts;   // per distinct token
  std::size_t total_tokens = 0;
  std::vector<std::vector<std::size_t>> sentence_ids;  // token ids, in order

  // Pairwise dot products are cached when the distinct set is small enough
  // to hold the full matrix; otherwise they are recomputed on demand.
  bool cached = false;
  std::vector<double> dots;

  static constexpr std::size_t kMaxCachedDistinct = 2048;

  void BuildDots() {
    const std::size_t n = vectors.size();
    if (n > kMaxCachedDistinct) return;
    cached = true;
    dots.assign(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        const double d = RawDot(a, b);
        dots[a * n + b] = d;
        dots[b * n + a] = d;
      }
    }
  }

  double RawDot(std::size_t a, std::size_t b) const {
    double d = 0.0;
    for (std::size_t k = 0; k < dim; ++k) d += vectors[a][k] * vectors[b][k];
    return d;
  }

  double Dot(std::size_t a, std::size_t b) const {
    if (cached) return dots[a * vectors.size() + b];
    return RawDot(a, b);
  }
};

DocEmbeddingIndex BuildDocIndex(const text::Document& doc,
                                const embedding::EmbeddingTable& table) {
  DocEmbeddingIndex idx;
  idx.dim = table.dimension();
  idx.sentence_ids.resize(doc.sentences.size());
  std::unordered_map<std::string, std::size_t> ids;

  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    for (const std::string& tok : doc.sentences[s].tokens) {
      const auto vec = table.Lookup(tok);
      if (!vec) continue;  // OOV under the skip policy
      auto [it, inserted] = ids.emplace(tok, idx.vectors.size());
      if (inserted) {
        idx.vectors.push_back(vec->data());
        idx.total_counts.push_back(0);
      }
      idx.sentence_ids[s].push_back(it->second);
      ++idx.total_counts[it->second];
      ++idx.total_tokens;
    }
  }
  idx.BuildDots();
  return idx;
}

}  // namespace

double Rouge1F1(TokenSpan candidate, TokenSpan reference) {
  if (candidate.empty() || reference.empty()) return 0.0;
  const auto cand_counts = CountTokens(candidate);
  const auto ref_counts = CountTokens(reference);

  std::size_t overlap = 0;
  for (const auto& [token, count] : cand_counts) {
    const auto it = ref_counts.find(token);
    if (it != ref_counts.end()) overlap += std::min(count, it->second);
  }
  const double precision = static_cast<double>(overlap) / candidate.size();
  const double recall = static_cast<double>(overlap) / reference.size();
  return HarmonicMean(precision, recall);
}

EmbeddingScores EmbeddingF1(TokenSpan candidate, TokenSpan reference,
                            const embedding::EmbeddingTable& table) {
  const std::size_t dim = table.dimension();
  std::vector<const double*> cand_vecs;
  std::vector<const double*> ref_vecs;
  cand_vecs.reserve(candidate.size());
  ref_vecs.reserve(reference.size());
  for (const std::string& t : candidate) {
    if (auto v = table.Lookup(t)) cand_vecs.push_back(v->data());
  }
  for (const std::string& t : reference) {
    if (auto v = table.Lookup(t)) ref_vecs.push_back(v->data());
  }

  EmbeddingScores out;
  if (cand_vecs.empty() || ref_vecs.empty()) {
    out.degenerate = true;
    return out;
  }

  auto dot = [dim](const double* a, const double* b) {
    double d = 0.0;
    for (std::size_t k = 0; k < dim; ++k) d += a[k] * b[k];
    return d;
  };

  double recall_sum = 0.0;
  for (const double* r : ref_vecs) {
    double best = dot(r, cand_vecs[0]);
    for (std::size_t j = 1; j < cand_vecs.size(); ++j) {
      best = std::max(best, dot(r, cand_vecs[j]));
    }
    recall_sum += best;
  }
  double precision_sum = 0.0;
  for (const double* c : cand_vecs) {
    double best = dot(c, ref_vecs[0]);
    for (std::size_t i = 1; i < ref_vecs.size(); ++i) {
      best = std::max(best, dot(c, ref_vecs[i]));
    }
    precision_sum += best;
  }

  out.recall = recall_sum / static_cast<double>(ref_vecs.size());
  out.precision = precision_sum / static_cast<double>(cand_vecs.size());
  out.f1 = HarmonicMean(out.precision, out.recall);
  return out;
}

SentenceScore ScoreSentence(const text::Document& doc, std::size_t index,
                            ScoreKind kind,
                            const embedding::EmbeddingTable* table) {
  if (doc.sentences.size() < 2) {
    throw std::invalid_argument(
        "ScoreSentence: document must have at least two sentences");
  }
  if (index >= doc.sentences.size()) {
    throw std::invalid_argument("ScoreSentence: sentence index out of range");
  }

  const std::vector<std::string>& candidate = doc.sentences[index].tokens;
  std::vector<std::string> reference;
  for (std::size_t j = 0; j < doc.sentences.size(); ++j) {
    if (j == index) continue;
    const auto& toks = doc.sentences[j].tokens;
    reference.insert(reference.end(), toks.begin(), toks.end());
  }

  SentenceScore out;
  if (kind == ScoreKind::kRouge1F1) {
    out.value = Rouge1F1(candidate, reference);
    return out;
  }
  if (table == nullptr) {
    throw std::invalid_argument(
        "ScoreSentence: semantic scoring needs an embedding table");
  }
  const EmbeddingScores s = EmbeddingF1(candidate, reference, *table);
  out.value = s.f1;
  out.degenerate = s.degenerate;
  return out;
}

std::vector<SentenceScore> ScoreAllSentences(
    const text::Document& doc, ScoreKind kind,
    const embedding::EmbeddingTable* table) {
  const std::size_t n = doc.sentences.size();
  if (n < 2) {
    throw std::invalid_argument(
        "ScoreAllSentences: document must have at least two sentences");
  }
  std::vector<SentenceScore> scores(n);

  if (kind == ScoreKind::kRouge1F1) {
    // Clipped unigram overlap of each sentence against the rest, using the
    // document totals: rest_count(w) = total(w) - sentence_count(w).
    std::unordered_map<std::string_view, std::size_t> total;
    std::size_t total_tokens = 0;
    for (const auto& s : doc.sentences) {
      for (const std::string& t : s.tokens) ++total[t];
      total_tokens += s.tokens.size();
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto& toks = doc.sentences[i].tokens;
      const std::size_t ref_len = total_tokens - toks.size();
      if (toks.empty() || ref_len == 0) continue;
      const auto counts = CountTokens(toks);
      std::size_t overlap = 0;
      for (const auto& [tok, c] : counts) {
        overlap += std::min(c, total.at(tok) - c);
      }
      const double precision = static_cast<double>(overlap) / toks.size();
      const double recall = static_cast<double>(overlap) / ref_len;
      scores[i].value = HarmonicMean(precision, recall);
    }
    return scores;
  }

  if (table == nullptr) {
    throw std::invalid_argument(
        "ScoreAllSentences: semantic scoring needs an embedding table");
  }

  const DocEmbeddingIndex idx = BuildDocIndex(doc, *table);
  const std::size_t distinct = idx.vectors.size();
  std::vector<std::size_t> rest_counts(distinct);
  std::vector<double> best_vs_cand(distinct);  // for rest tokens (recall)
  std::vector<double> best_vs_rest(distinct);  // for candidate tokens (precision)

  for (std::size_t i = 0; i < n; ++i) {
    const auto& cand_ids = idx.sentence_ids[i];
    const std::size_t cand_total = cand_ids.size();
    const std::size_t ref_total = idx.total_tokens - cand_total;
    if (cand_total == 0 || ref_total == 0) {
      scores[i].degenerate = true;
      continue;
    }

    for (std::size_t u = 0; u < distinct; ++u) rest_counts[u] = idx.total_counts[u];
    for (const std::size_t id : cand_ids) --rest_counts[id];

    std::vector<std::size_t> cand_distinct = cand_ids;
    std::sort(cand_distinct.begin(), cand_distinct.end());
    cand_distinct.erase(
        std::unique(cand_distinct.begin(), cand_distinct.end()),
        cand_distinct.end());

    for (std::size_t u = 0; u < distinct; ++u) {
      if (rest_counts[u] == 0) continue;
      double best_c = idx.Dot(u, cand_distinct[0]);
      for (std::size_t j = 1; j < cand_distinct.size(); ++j) {
        best_c = std::max(best_c, idx.Dot(u, cand_distinct[j]));
      }
      best_vs_cand[u] = best_c;
    }
    for (const std::size_t v : cand_distinct) {
      double best_r = 0.0;
      bool first = true;
      for (std::size_t u = 0; u < distinct; ++u) {
        if (rest_counts[u] == 0) continue;
        const double d = idx.Dot(v, u);
        if (first || d > best_r) {
          best_r = d;
          first = false;
        }
      }
      best_vs_rest[v] = best_r;
    }

    // Accumulate in the same token order the per-sentence path uses so the
    // floating point sums match exactly.
    double recall_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (const std::size_t id : idx.sentence_ids[j]) {
        recall_sum += best_vs_cand[id];
      }
    }
    double precision_sum = 0.0;
    for (const std::size_t id : cand_ids) precision_sum += best_vs_rest[id];

    const double recall = recall_sum / static_cast<double>(ref_total);
    const double precision = precision_sum / static_cast<double>(cand_total);
    scores[i].value = HarmonicMean(precision, recall);
  }
  return scores;
}

}  // namespace gapsum::scoring
