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

#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "embedding/embedding_table.hpp"
#include "metrics/metrics.hpp"
#include "text/text.hpp"

namespace {

using gapsum::embedding::EmbeddingTable;
using gapsum::embedding::OovPolicy;
using gapsum::metrics::CorpusAccumulator;
using gapsum::metrics::DensityCoverage;
using gapsum::metrics::EntitySet;
using gapsum::metrics::EntityTriple;
using gapsum::metrics::EvaluatePair;
using gapsum::metrics::ExtractiveFragments;
using gapsum::metrics::FactualConsistency;
using gapsum::metrics::Fragment;
using gapsum::metrics::MetricReport;
using gapsum::metrics::PrfScore;
using gapsum::metrics::RougeL;
using gapsum::metrics::RougeN;
using gapsum::text::Document;

using Tokens = std::vector<std::string>;

TEST_CASE("rouge-2 of identical sequences is one") {
  const Tokens t = {"a", "b", "c", "d"};
  const PrfScore s = RougeN(t, t, 2);
  CHECK(s.precision == 1.0);
  CHECK(s.recall == 1.0);
  CHECK(s.f1 == 1.0);
}

TEST_CASE("rouge-2 hand check") {
  const Tokens cand = {"the", "cat", "sat", "here"};
  const Tokens ref = {"the", "cat", "sat"};
  const PrfScore s = RougeN(cand, ref, 2);
  // Shared bigrams: "the cat", "cat sat"; cand has 3 bigrams, ref has 2.
  CHECK(s.precision == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(s.recall == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.f1 == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("rouge-n of disjoint sequences is zero") {
  const Tokens a = {"a", "b", "c"};
  const Tokens b = {"x", "y", "z"};
  for (std::size_t n = 1; n <= 3; ++n) {
    const PrfScore s = RougeN(a, b, n);
    CHECK(s.precision == 0.0);
    CHECK(s.recall == 0.0);
    CHECK(s.f1 == 0.0);
  }
}

TEST_CASE("rouge-n rejects n of zero and handles short inputs") {
  const Tokens t = {"a"};
  CHECK_THROWS_AS(RougeN(t, t, 0), std::invalid_argument);
  // Sequences shorter than n have no n-grams: all zeros.
  const PrfScore s = RougeN(t, t, 2);
  CHECK(s.f1 == 0.0);
}

TEST_CASE("rouge-l hand check") {
  const Tokens cand = {"a", "b", "c"};
  const Tokens ref = {"a", "x", "c"};
  const PrfScore s = RougeL(cand, ref);
  // LCS = [a, c], length 2.
  CHECK(s.precision == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(s.recall == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(s.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("rouge-l identity and empty cases") {
  const Tokens t = {"a", "b", "c"};
  const PrfScore s = RougeL(t, t);
  CHECK(s.f1 == 1.0);
  const Tokens none;
  const PrfScore e = RougeL(none, t);
  CHECK(e.precision == 0.0);
  CHECK(e.recall == 0.0);
  CHECK(e.f1 == 0.0);
}

TEST_CASE("rouge-l f1 never exceeds rouge-1 f1") {
  // An LCS is a clipped unigram matching with an order constraint on top.
  std::mt19937 gen(4242);
  std::uniform_int_distribution<int> len(0, 12);
  std::uniform_int_distribution<int> letter(0, 4);
  for (int i = 0; i < 1000; ++i) {
    Tokens a, b;
    for (int k = len(gen); k > 0; --k)
      a.push_back(std::string(1, static_cast<char>('a' + letter(gen))));
    for (int k = len(gen); k > 0; --k)
      b.push_back(std::string(1, static_cast<char>('a' + letter(gen))));
    CHECK(RougeL(a, b).f1 <= RougeN(a, b, 1).f1 + 1e-15);
  }
}

TEST_CASE("fragments: one contiguous copy") {
  const Tokens article = {"a", "b", "c", "d", "e", "f"};
  const Tokens summary = {"b", "c", "d"};
  const auto frags = ExtractiveFragments(article, summary);
  REQUIRE(frags.size() == 1);
  CHECK(frags[0].length == 3);
  CHECK(frags[0].start_in_article == 1);
  CHECK(frags[0].start_in_summary == 0);
}

TEST_CASE("fragments: novel token splits the copy") {
  const Tokens article = {"a", "b", "c", "d", "e", "f"};
  const Tokens summary = {"b", "x", "d"};
  const auto frags = ExtractiveFragments(article, summary);
  REQUIRE(frags.size() == 3);
  CHECK(frags[0].length == 1);
  CHECK(frags[1].length == 0);
  CHECK(frags[1].start_in_article == gapsum::metrics::kNoArticlePos);
  CHECK(frags[2].length == 1);
}

TEST_CASE("fragments: fully novel summary shares nothing") {
  const Tokens article = {"a", "b"};
  const Tokens summary = {"z", "z"};
  const auto frags = ExtractiveFragments(article, summary);
  REQUIRE(frags.size() == 2);
  CHECK(frags[0].length == 0);
  CHECK(frags[1].length == 0);
}

TEST_CASE("fragments tile the summary") {
  const Tokens article = {"a", "b", "c", "a", "b", "d"};
  const Tokens summary = {"a", "b", "d", "z", "a", "b", "c"};
  const auto frags = ExtractiveFragments(article, summary);
  std::size_t covered = 0;
  for (const Fragment& f : frags) {
    CHECK(f.start_in_summary == covered);
    covered += f.length == 0 ? 1 : f.length;
  }
  CHECK(covered == summary.size());
  // Longest-match greed: "a b d" (at article 3) beats "a b c" (at 0).
  CHECK(frags[0].length == 3);
  CHECK(frags[0].start_in_article == 3);
}

TEST_CASE("fragment ties resolve to the earliest article start") {
  const Tokens article = {"x", "a", "b", "y", "a", "b"};
  const Tokens summary = {"a", "b"};
  const auto frags = ExtractiveFragments(article, summary);
  REQUIRE(frags.size() == 1);
  CHECK(frags[0].length == 2);
  CHECK(frags[0].start_in_article == 1);
}

TEST_CASE("density and coverage examples") {
  {
    // One fragment of length 3 over a 3-token summary.
    const std::vector<Fragment> frags = {{0, 0, 3}};
    const auto dc = DensityCoverage(frags, 3);
    CHECK(dc.coverage == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dc.density == doctest::Approx(3.0).epsilon(1e-12));
  }
  {
    // Fragments of lengths 1 and 1 over a 3-token summary.
    const std::vector<Fragment> frags = {{0, 0, 1}, {2, 2, 1}};
    const auto dc = DensityCoverage(frags, 3);
    CHECK(dc.coverage == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(dc.density == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  }
  {
    const auto dc = DensityCoverage({}, 4);
    CHECK(dc.coverage == 0.0);
    CHECK(dc.density == 0.0);
  }
  CHECK_THROWS_AS(DensityCoverage({}, 0), std::invalid_argument);
}

TEST_CASE("factual consistency examples") {
  {
    const auto s = FactualConsistency({"Tehran", "IRNA"}, {"Tehran"},
                                      {"Tehran"});
    CHECK(s.precision_source == 1.0);
    CHECK(s.f1_target == 1.0);
  }
  {
    const auto s = FactualConsistency({"Tehran"}, {"Tehran"}, {"Paris"});
    CHECK(s.precision_source == 0.0);
    CHECK(s.f1_target == 0.0);
  }
  {
    const auto s = FactualConsistency({"a"}, {"a", "c"}, {"a", "b"});
    CHECK(s.precision_source == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.f1_target == doctest::Approx(0.5).epsilon(1e-12));
  }
  {
    // Empty hypothesis asserts nothing false; empty reference guards to 0.
    const auto s = FactualConsistency({}, {}, {});
    CHECK(s.precision_source == 1.0);
    CHECK(s.f1_target == 0.0);
  }
}

TEST_CASE("evaluate pair on a verbatim slice") {
  const Document article = Document::Make(
      "a", "alpha beta gamma delta. eps zeta eta theta. iota kappa mu nu.");
  const Document summary = Document::Make("s", "eps zeta eta theta.");
  const MetricReport r = EvaluatePair(article, summary, summary);
  CHECK(r.rouge1.f1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.rouge2.f1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.rougeL.f1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.coverage == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(r.embed.has_value());
  CHECK_FALSE(r.factual.has_value());
}

TEST_CASE("evaluate pair fills optional fields when inputs are given") {
  std::istringstream vec("2 2\nalpha 1 0\nbeta 0 1\n");
  const EmbeddingTable table =
      EmbeddingTable::LoadFromStream(vec, 0, OovPolicy::kSkipToken, "t.vec");
  const Document article = Document::Make("a", "alpha beta gamma.");
  const Document ref = Document::Make("r", "alpha beta.");
  const Document hyp = Document::Make("h", "alpha gamma.");
  EntityTriple entities;
  entities.source = {"alpha"};
  entities.reference = {"alpha"};
  entities.hypothesis = {"alpha"};
  const MetricReport r = EvaluatePair(article, ref, hyp, &table, &entities);
  REQUIRE(r.embed.has_value());
  CHECK_FALSE(r.embed->degenerate);
  REQUIRE(r.factual.has_value());
  CHECK(r.factual->precision_source == 1.0);
}

TEST_CASE("evaluate pair rejects empty sides") {
  const Document article = Document::Make("a", "alpha beta gamma.");
  const Document empty = Document::Make("e", "");
  CHECK_THROWS_AS(EvaluatePair(article, empty, article),
                  std::invalid_argument);
  CHECK_THROWS_AS(EvaluatePair(article, article, empty),
                  std::invalid_argument);
}

TEST_CASE("corpus accumulator averages") {
  CorpusAccumulator acc;
  MetricReport a;
  a.rouge1 = {1.0, 1.0, 1.0};
  a.density = 2.0;
  a.coverage = 1.0;
  MetricReport b;
  b.rouge1 = {0.0, 0.0, 0.0};
  b.density = 0.0;
  b.coverage = 0.0;
  b.embed = gapsum::scoring::EmbeddingScores{1.0, 1.0, 1.0, false};
  acc.Add(a);
  acc.Add(b);
  const MetricReport mean = acc.Mean();
  CHECK(acc.count() == 2);
  CHECK(mean.rouge1.f1 == doctest::Approx(0.5));
  CHECK(mean.density == doctest::Approx(1.0));
  CHECK(mean.coverage == doctest::Approx(0.5));
  // Only one report carried an embedding score; the mean is over that one.
  REQUIRE(mean.embed.has_value());
  CHECK(mean.embed->f1 == doctest::Approx(1.0));
}

TEST_CASE("empty accumulator yields a zero report") {
  const CorpusAccumulator acc;
  const MetricReport mean = acc.Mean();
  CHECK(acc.count() == 0);
  CHECK(mean.rouge1.f1 == 0.0);
  CHECK_FALSE(mean.embed.has_value());
}

}  // namespace
