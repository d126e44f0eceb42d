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

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "cleaning/cleaner.hpp"
#include "cleaning/langid.hpp"
#include "text/text.hpp"

namespace {

using gapsum::cleaning::BuiltInLanguageProbe;
using gapsum::cleaning::CleaningConfig;
using gapsum::cleaning::CleaningReport;
using gapsum::cleaning::CleanOutcome;
using gapsum::cleaning::CleanRecord;
using gapsum::cleaning::DeduplicateParagraphs;
using gapsum::cleaning::FilterSentences;
using gapsum::cleaning::LanguageProbe;

// Three well-formed Persian sentences; reused wherever a doc must survive.
const char* kGoodPersian =
    "امروز هوا در شهر ما بسیار خوب است. "
    "مردم برای خرید به بازار بزرگ شهر می‌روند. "
    "کودکان در پارک نزدیک خانه بازی می‌کنند.";

TEST_CASE("short sentences are dropped") {
  const auto r = FilterSentences(
      gapsum::text::Normalize("سلام دوست من. امروز هوا در شهر ما بسیار خوب است."),
      CleaningConfig::Defaults());
  CHECK(r.dropped_short == 1);
  REQUIRE(r.kept.size() == 1);
  CHECK(r.kept[0] == "امروز هوا در شهر ما بسیار خوب است.");
}

TEST_CASE("unterminated trailing sentences are dropped") {
  const auto r = FilterSentences(
      gapsum::text::Normalize("this has five whole words"),
      CleaningConfig::Defaults());
  CHECK(r.dropped_terminator == 1);
  CHECK(r.kept.empty());
}

TEST_CASE("blacklisted sentences are dropped") {
  const auto r = FilterSentences(
      gapsum::text::Normalize(
          "برای مطالعه بیشتر روی لینک کوتاه کلیک کنید."),
      CleaningConfig::Defaults());
  CHECK(r.dropped_blacklist == 1);
  CHECK(r.kept.empty());
}

TEST_CASE("rule order is short then terminator then blacklist") {
  // Two words and no terminator and a blacklist hit: only `short` counts.
  const auto r = FilterSentences(gapsum::text::Normalize("لینک کوتاه"),
                                 CleaningConfig::Defaults());
  CHECK(r.dropped_short == 1);
  CHECK(r.dropped_terminator == 0);
  CHECK(r.dropped_blacklist == 0);
}

TEST_CASE("paragraph dedup keeps the first occurrence") {
  std::uint64_t removed = 0;
  const auto out =
      DeduplicateParagraphs({"P1 a.", "P2 b.", "P1 a."}, &removed);
  CHECK(out == std::vector<std::string>{"P1 a.", "P2 b."});
  CHECK(removed == 1);

  removed = 0;
  const auto same = DeduplicateParagraphs({"P1.", "P2.", "P3."}, &removed);
  CHECK(same.size() == 3);
  CHECK(removed == 0);
}

TEST_CASE("documents with fewer than three surviving sentences are rejected") {
  const CleanOutcome out = CleanRecord(
      "امروز هوا در شهر ما بسیار خوب است. مردم برای خرید به بازار بزرگ شهر می‌روند.",
      CleaningConfig::Defaults(), nullptr);
  CHECK_FALSE(out.kept);
  CHECK(out.report.rejected_too_few_sentences == 1);
}

TEST_CASE("a clean persian document passes through") {
  const CleanOutcome out =
      CleanRecord(kGoodPersian, CleaningConfig::Defaults(), nullptr);
  CHECK(out.kept);
  CHECK(out.report.docs_out == 1);
  CHECK(out.cleaned_text == gapsum::text::Normalize(kGoodPersian));
}

TEST_CASE("the built-in probe keeps persian and rejects english") {
  const LanguageProbe probe = BuiltInLanguageProbe();
  const auto fa = probe(gapsum::text::Normalize(kGoodPersian), "fa");
  REQUIRE(fa.has_value());
  CHECK(*fa >= 0.99);
  const auto en = probe(
      "The quick brown fox jumps over the lazy dog today and tomorrow.",
      "fa");
  REQUIRE(en.has_value());
  CHECK(*en < 0.99);
}

TEST_CASE("language filter rejects english documents") {
  const CleanOutcome out = CleanRecord(
      "The quick brown fox jumps over the lazy dog today. "
      "The committee will meet again early next week to vote. "
      "Many people enjoy reading long novels during the winter holidays.",
      CleaningConfig::Defaults(), BuiltInLanguageProbe());
  CHECK_FALSE(out.kept);
  CHECK(out.report.non_target_language_docs == 1);
}

TEST_CASE("threshold zero keeps every language") {
  CleaningConfig cfg = CleaningConfig::Defaults();
  cfg.language_threshold = 0.0;
  const CleanOutcome out = CleanRecord(
      "The quick brown fox jumps over the lazy dog today. "
      "The committee will meet again early next week to vote. "
      "Many people enjoy reading long novels during the winter holidays.",
      cfg, BuiltInLanguageProbe());
  CHECK(out.kept);
}

TEST_CASE("probe failure keeps the document and flags it") {
  const LanguageProbe failing = [](std::string_view,
                                   const std::string&) -> std::optional<double> {
    return std::nullopt;
  };
  const CleanOutcome out =
      CleanRecord(kGoodPersian, CleaningConfig::Defaults(), failing);
  CHECK(out.kept);
  CHECK(out.report.language_flagged_kept == 1);
}

TEST_CASE("whitespace-variant paragraphs deduplicate") {
  const std::string base =
      "نمایشگاه کتاب در محل دائمی نمایشگاه‌ها برگزار می‌شود. "
      "ناشران داخلی و خارجی آثار خود را عرضه می‌کنند. "
      "بازدیدکنندگان می‌توانند کتاب‌ها را با تخفیف بخرند.";
  const std::string variant =
      "نمایشگاه  کتاب در محل دائمی نمایشگاه‌ها برگزار  می‌شود. "
      "ناشران داخلی و خارجی آثار خود را عرضه می‌کنند. "
      "بازدیدکنندگان می‌توانند کتاب‌ها را با تخفیف بخرند.";
  const CleanOutcome out =
      CleanRecord(base + "\n" + variant, CleaningConfig::Defaults(), nullptr);
  CHECK(out.kept);
  CHECK(out.report.duplicates_removed == 1);
  CHECK(out.cleaned_text == gapsum::text::Normalize(base));
}

TEST_CASE("dedup that empties a document rejects it") {
  // Both paragraphs have two sentences; together they pass the three-sentence
  // gate, but after dedup only two remain, so the document must go.
  const std::string para =
      "تیم ملی فوتبال در بازی دیروز پیروز شد. "
      "هواداران این پیروزی را در خیابان‌ها جشن گرفتند.";
  const CleanOutcome out =
      CleanRecord(para + "\n" + para, CleaningConfig::Defaults(), nullptr);
  CHECK_FALSE(out.kept);
  CHECK(out.report.duplicates_removed == 1);
  CHECK(out.report.rejected_too_few_sentences == 1);
}

TEST_CASE("cleaning is idempotent") {
  const CleaningConfig cfg = CleaningConfig::Defaults();
  const LanguageProbe probe = BuiltInLanguageProbe();
  const std::string docs[] = {
      kGoodPersian,
      "کتابخانه مرکزی شهر هر روز پذیرای دانشجویان است. "
      "برای مطالعه بیشتر روی لینک کوتاه کلیک کنید. "
      "اعضای کتابخانه می‌توانند کتاب‌ها را امانت بگیرند. "
      "سالن مطالعه تا پاسی از شب باز می‌ماند.",
  };
  for (const std::string& raw : docs) {
    const CleanOutcome first = CleanRecord(raw, cfg, probe);
    REQUIRE(first.kept);
    const CleanOutcome second = CleanRecord(first.cleaned_text, cfg, probe);
    CHECK(second.kept);
    CHECK(second.cleaned_text == first.cleaned_text);
    CHECK(second.report.sentences_dropped_short == 0);
    CHECK(second.report.sentences_dropped_terminator == 0);
    CHECK(second.report.sentences_dropped_blacklist == 0);
    CHECK(second.report.duplicates_removed == 0);
  }
}

TEST_CASE("golden corpus: survivors, counts, and idempotence") {
  std::ifstream in(std::string(GAPSUM_TEST_FIXTURES) +
                   "/cleaner_golden.jsonl");
  REQUIRE(in.is_open());
  const CleaningConfig cfg = CleaningConfig::Defaults();
  const LanguageProbe probe = BuiltInLanguageProbe();

  CleaningReport total;
  std::vector<std::string> survivors;
  std::map<std::string, std::string> cleaned;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto record = nlohmann::json::parse(line);
    const CleanOutcome out =
        CleanRecord(record.at("text").get<std::string>(), cfg, probe);
    total.Merge(out.report);
    if (out.kept) {
      survivors.push_back(record.at("id").get<std::string>());
      cleaned[record.at("id").get<std::string>()] = out.cleaned_text;
    }
  }

  // Frozen after hand-applying the four rules to the fixture.
  CHECK(survivors == std::vector<std::string>{"c01", "c04", "c05", "c07",
                                              "c09", "c10", "c12"});
  CHECK(total.docs_in == 12);
  CHECK(total.docs_out == 7);
  CHECK(total.sentences_dropped_short == 5);
  CHECK(total.sentences_dropped_terminator == 6);
  CHECK(total.sentences_dropped_blacklist == 1);
  CHECK(total.rejected_too_few_sentences == 3);
  CHECK(total.non_target_language_docs == 2);
  CHECK(total.duplicates_removed == 2);
  CHECK(total.language_flagged_kept == 0);

  // The duplicate paragraph in c04 goes away; c07 keeps its paragraph break.
  CHECK(cleaned.at("c04").find('\n') == std::string::npos);
  CHECK(cleaned.at("c07").find('\n') != std::string::npos);
  // The blacklisted sentence leaves c05.
  CHECK(cleaned.at("c05").find("لینک کوتاه") == std::string::npos);

  // Second pass over every survivor is the identity.
  for (const auto& [id, text] : cleaned) {
    const CleanOutcome again = CleanRecord(text, cfg, probe);
    CHECK(again.kept);
    CHECK(again.cleaned_text == text);
  }
}

}  // namespace
