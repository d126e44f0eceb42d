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

#include <algorithm>
#include <string>
#include <vector>

#include <doctest.h>

#include "objectives/objectives.hpp"
#include "selection/selection.hpp"
#include "text/text.hpp"
#include "util/errors.hpp"
#include "util/rng.hpp"

namespace {

using gapsum::ConfigError;
using gapsum::objectives::Branch;
using gapsum::objectives::BuildExample;
using gapsum::objectives::BuildTssMsr;
using gapsum::objectives::BuildTssRouge;
using gapsum::objectives::BuildTssSh;
using gapsum::objectives::BuildTssSs;
using gapsum::objectives::Objective;
using gapsum::objectives::ObjectiveConfig;
using gapsum::objectives::ObjectiveFromName;
using gapsum::objectives::PretrainExample;
using gapsum::selection::SelectionResult;
using gapsum::text::Document;
using gapsum::util::DocRng;

// Sentences tokenize cleanly and stay distinct: "s0 alpha.", "s1 beta." ...
Document MakeDoc(std::size_t sentences, const std::string& id = "doc") {
  static const char* fillers[] = {"alpha", "beta",  "gamma", "delta",
                                  "eps",   "zeta",  "eta",   "theta",
                                  "iota",  "kappa", "lam",   "mu"};
  std::string text;
  for (std::size_t i = 0; i < sentences; ++i) {
    text += "s" + std::to_string(i) + " " + fillers[i % 12] + ". ";
  }
  return Document::Make(id, text);
}

SelectionResult Select(const std::vector<std::size_t>& indices,
                       std::size_t doc_sentences) {
  SelectionResult sel;
  sel.selected = indices;
  sel.m = indices.size();
  sel.scores.assign(doc_sentences, 0.0);
  return sel;
}

TEST_CASE("config validation") {
  ObjectiveConfig cfg;
  CHECK_NOTHROW(cfg.Validate());
  cfg.mask_rate = 0.0;
  CHECK_THROWS_AS(cfg.Validate(), ConfigError);
  cfg.mask_rate = 1.1;
  CHECK_THROWS_AS(cfg.Validate(), ConfigError);
  cfg = ObjectiveConfig{};
  cfg.shuffle_fraction = -0.1;
  CHECK_THROWS_AS(cfg.Validate(), ConfigError);
  cfg = ObjectiveConfig{};
  cfg.shuffle_fraction = 0.0;  // zero is a valid degenerate fraction
  CHECK_NOTHROW(cfg.Validate());
  cfg = ObjectiveConfig{};
  cfg.msr_reorder_doc_fraction = 0.0;
  CHECK_NOTHROW(cfg.Validate());
  cfg = ObjectiveConfig{};
  cfg.mask_token = "";
  CHECK_THROWS_AS(cfg.Validate(), ConfigError);
  cfg = ObjectiveConfig{};
  cfg.selection_ratio = 0.0;
  CHECK_THROWS_AS(cfg.Validate(), ConfigError);
}

TEST_CASE("objective names round trip") {
  for (const Objective o : {Objective::kTssRouge, Objective::kTssSs,
                            Objective::kTssSh, Objective::kTssMsr}) {
    CHECK(ObjectiveFromName(gapsum::objectives::ObjectiveName(o)) == o);
  }
  CHECK_THROWS_AS(ObjectiveFromName("bogus"), ConfigError);
}

TEST_CASE("tss_rouge masks each selected sentence in place") {
  const Document doc = MakeDoc(3);
  ObjectiveConfig cfg;
  cfg.objective = Objective::kTssRouge;

  const PretrainExample one = BuildTssRouge(doc, Select({1}, 3), cfg);
  CHECK(one.input_text == "s0 alpha. <mask> s2 gamma.");
  CHECK(one.target_text == "s1 beta.");
  CHECK(one.branch == Branch::kMask);
  CHECK(one.masked_indices == std::vector<std::size_t>{1});

  const PretrainExample last = BuildTssRouge(doc, Select({2}, 3), cfg);
  CHECK(last.input_text == "s0 alpha. s1 beta. <mask>");
  CHECK(last.target_text == "s2 gamma.");
}

TEST_CASE("tss_rouge never coalesces adjacent masks") {
  const Document doc = MakeDoc(3);
  ObjectiveConfig cfg;
  cfg.objective = Objective::kTssRouge;
  const PretrainExample ex = BuildTssRouge(doc, Select({0, 1}, 3), cfg);
  CHECK(ex.input_text == "<mask> <mask> s2 gamma.");
  CHECK(ex.target_text == "s0 alpha. s1 beta.");
  CHECK(ex.masked_indices == std::vector<std::size_t>{0, 1});
}

TEST_CASE("tss_ss coalesces adjacent masked sentences") {
  const Document doc = MakeDoc(4);
  ObjectiveConfig cfg;
  cfg.objective = Objective::kTssSs;
  cfg.mask_rate = 1.0;
  DocRng rng(0, doc.id);
  const PretrainExample ex = BuildTssSs(doc, Select({1, 2}, 4), cfg, rng);
  CHECK(ex.input_text == "s0 alpha. <mask> s3 delta.");
  CHECK(ex.target_text == "s1 beta. s2 gamma.");
  CHECK(ex.branch == Branch::kMask);
  CHECK(ex.masked_indices == std::vector<std::size_t>{1, 2});
}

TEST_CASE("tss_ss at full mask rate masks the leading sentence") {
  const Document doc = MakeDoc(2);
  ObjectiveConfig cfg;
  cfg.objective = Objective::kTssSs;
  cfg.mask_rate = 1.0;
  DocRng rng(0, doc.id);
  const PretrainExample ex = BuildTssSs(doc, Select({0}, 2), cfg, rng);
  CHECK(ex.input_text == "<mask> s1 beta.");
  CHECK(ex.target_text == "s0 alpha.");
}

TEST_CASE("tss_ss target lists every selected sentence even when kept") {
  const Document doc = MakeDoc(6);
  ObjectiveConfig cfg;
  cfg.objective = Objective::kTssSs;
  cfg.mask_rate = 0.5;
  bool saw_keep = false;
  for (int seed = 0; seed < 32 && !saw_keep; ++seed) {
    DocRng rng(static_cast<std::uint64_t>(seed), doc.id);
    const PretrainExample ex = BuildTssSs(doc, Select({1, 3, 4}, 6), cfg, rng);
    CHECK(ex.target_text == "s1 beta. s3 delta. s4 eps.");
    if (ex.branch == Branch::kKeep) {
      saw_keep = true;
      // A kept sentence still appears verbatim in the input.
      const bool any_kept =
          ex.input_text.find("s1 beta.") != std::string::npos ||
          ex.input_text.find("s3 delta.") != std::string::npos ||
          ex.input_text.find("s4 eps.") != std::string::npos;
      CHECK(any_kept);
    }
  }
  CHECK(saw_keep);
}

TEST_CASE("tss_ss input never contains adjacent mask tokens") {
  const Document doc = MakeDoc(8);
  ObjectiveConfig cfg;
  cfg.objective = Objective::kTssSs;
  cfg.mask_rate = 0.8;
  for (int seed = 0; seed < 64; ++seed) {
    DocRng rng(static_cast<std::uint64_t>(seed), doc.id);
    const PretrainExample ex =
        BuildTssSs(doc, Select({1, 2, 3, 6}, 8), cfg, rng);
    CHECK(ex.input_text.find("<mask> <mask>") == std::string::npos);
  }
}

TEST_CASE("tss_sh at zero shuffle fraction equals tss_ss at full mask rate") {
  const Document doc = MakeDoc(5);
  ObjectiveConfig sh;
  sh.objective = Objective::kTssSh;
  sh.shuffle_fraction = 0.0;
  ObjectiveConfig ss;
  ss.objective = Objective::kTssSs;
  ss.mask_rate = 1.0;
  for (int seed = 0; seed < 16; ++seed) {
    DocRng rng_sh(static_cast<std::uint64_t>(seed), doc.id);
    DocRng rng_ss(static_cast<std::uint64_t>(seed), doc.id);
    const auto sel = Select({0, 2}, 5);
    const PretrainExample a = BuildTssSh(doc, sel, sh, rng_sh);
    const PretrainExample b = BuildTssSs(doc, sel, ss, rng_ss);
    CHECK(a.input_text == b.input_text);
    CHECK(a.target_text == b.target_text);
    CHECK(a.branch == b.branch);
    CHECK(a.masked_indices == b.masked_indices);
  }
}

TEST_CASE("tss_sh shuffles a span and keeps the target unshuffled") {
  // Long sentence so a shuffle is visible; shuffle_fraction 1 forces the
  // shuffle path for every selected sentence.
  const Document doc = Document::Make(
      "doc-sh", "one two three four five six seven eight. s1 beta. s2 gamma.");
  REQUIRE(doc.sentences.size() == 3);
  ObjectiveConfig cfg;
  cfg.objective = Objective::kTssSh;
  cfg.shuffle_fraction = 1.0;
  bool saw_change = false;
  for (int seed = 0; seed < 16; ++seed) {
    DocRng rng(static_cast<std::uint64_t>(seed), doc.id);
    const PretrainExample ex = BuildTssSh(doc, Select({0}, 3), cfg, rng);
    CHECK(ex.target_text == "one two three four five six seven eight.");
    CHECK(ex.branch == Branch::kSpanShuffle);
    CHECK(ex.masked_indices.empty());
    CHECK(ex.input_text.find("<mask>") == std::string::npos);
    // The shuffled sentence is a permutation of the original tokens.
    const auto original = gapsum::text::Tokenize(doc.sentences[0].text);
    const std::size_t cut = ex.input_text.find(" s1 beta.");
    REQUIRE(cut != std::string::npos);
    auto shuffled = gapsum::text::Tokenize(ex.input_text.substr(0, cut));
    auto sorted_original = original;
    auto sorted_shuffled = shuffled;
    std::sort(sorted_original.begin(), sorted_original.end());
    std::sort(sorted_shuffled.begin(), sorted_shuffled.end());
    CHECK(sorted_original == sorted_shuffled);
    if (shuffled != original) saw_change = true;
  }
  CHECK(saw_change);
}

TEST_CASE("tss_sh masks sentences too short to shuffle") {
  // "s0 alpha." tokenizes to three tokens; "hi." to two, which cannot hold
  // a span of two in any nontrivial permutation.
  const Document doc = Document::Make("doc", "hi. s1 beta. s2 gamma.");
  REQUIRE(doc.sentences.size() == 3);
  REQUIRE(doc.sentences[0].tokens.size() < 3);
  ObjectiveConfig cfg;
  cfg.objective = Objective::kTssSh;
  cfg.shuffle_fraction = 1.0;
  DocRng rng(0, doc.id);
  const PretrainExample ex = BuildTssSh(doc, Select({0}, 3), cfg, rng);
  CHECK(ex.branch == Branch::kMask);
  CHECK(ex.input_text == "<mask> s1 beta. s2 gamma.");
  CHECK(ex.masked_indices == std::vector<std::size_t>{0});
}

TEST_CASE("tss_msr at zero fraction behaves as tss_ss at full mask rate") {
  const Document doc = MakeDoc(5);
  ObjectiveConfig msr;
  msr.objective = Objective::kTssMsr;
  msr.msr_reorder_doc_fraction = 0.0;
  msr.mask_rate = 1.0;
  ObjectiveConfig ss;
  ss.objective = Objective::kTssSs;
  ss.mask_rate = 1.0;
  for (int seed = 0; seed < 16; ++seed) {
    DocRng rng_msr(static_cast<std::uint64_t>(seed), doc.id);
    DocRng rng_ss(static_cast<std::uint64_t>(seed), doc.id);
    const auto sel = Select({1, 4}, 5);
    const PretrainExample a = BuildTssMsr(doc, sel, msr, rng_msr);
    const PretrainExample b = BuildTssSs(doc, sel, ss, rng_ss);
    // At full mask rate the per-sentence draws cannot change the outcome,
    // so the extra document-level draw msr consumes is invisible here.
    CHECK(a.input_text == b.input_text);
    CHECK(a.target_text == b.target_text);
    CHECK(a.branch == b.branch);
    CHECK(a.masked_indices == b.masked_indices);
    CHECK(a.objective == Objective::kTssMsr);
  }
}

TEST_CASE("tss_msr reorder branch permutes all sentences and keeps order in "
          "the target") {
  const Document doc = MakeDoc(10);
  ObjectiveConfig cfg;
  cfg.objective = Objective::kTssMsr;
  cfg.msr_reorder_doc_fraction = 1.0;
  DocRng rng(3, doc.id);
  const PretrainExample ex = BuildTssMsr(doc, Select({1, 4, 8}, 10), cfg, rng);
  CHECK(ex.branch == Branch::kReorder);
  CHECK(ex.target_text == "s1 beta. s4 eps. s8 iota.");
  CHECK(ex.masked_indices.empty());
  CHECK(ex.input_text.find("<mask>") == std::string::npos);
  // The input is a permutation of all ten sentences.
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(ex.input_text.find(doc.sentences[i].text) != std::string::npos);
  }
}

TEST_CASE("build example is deterministic per document") {
  const Document doc = MakeDoc(8, "doc-42");
  ObjectiveConfig cfg;
  cfg.objective = Objective::kTssMsr;
  cfg.seed = 99;
  const PretrainExample a = BuildExample(doc, Select({1, 3}, 8), cfg);
  const PretrainExample b = BuildExample(doc, Select({1, 3}, 8), cfg);
  CHECK(a.input_text == b.input_text);
  CHECK(a.target_text == b.target_text);
  CHECK(a.branch == b.branch);
  CHECK(a.masked_indices == b.masked_indices);
}

TEST_CASE("different documents draw from different streams") {
  ObjectiveConfig cfg;
  cfg.objective = Objective::kTssSs;
  cfg.mask_rate = 0.5;
  cfg.seed = 1;
  int distinct_inputs = 0;
  const Document base = MakeDoc(8, "doc-a");
  const PretrainExample first = BuildExample(base, Select({1, 3, 5}, 8), cfg);
  for (int i = 0; i < 16; ++i) {
    const Document other = MakeDoc(8, "doc-b" + std::to_string(i));
    const PretrainExample ex = BuildExample(other, Select({1, 3, 5}, 8), cfg);
    if (ex.input_text.find("<mask>") != first.input_text.find("<mask>")) {
      ++distinct_inputs;
    }
  }
  CHECK(distinct_inputs > 0);
}

TEST_CASE("selection validation rejects malformed selections") {
  const Document doc = MakeDoc(3);
  ObjectiveConfig cfg;
  cfg.objective = Objective::kTssRouge;
  CHECK_THROWS_AS(BuildTssRouge(doc, Select({}, 3), cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(BuildTssRouge(doc, Select({5}, 3), cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(BuildTssRouge(doc, Select({0, 1, 2}, 3), cfg),
                  std::invalid_argument);
}

}  // namespace
