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

#include "pipeline/runners.hpp"

#include <algorithm>
#include <atomic>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "cleaning/cleaner.hpp"
#include "embedding/embedding_table.hpp"
#include "metrics/metrics.hpp"
#include "objectives/objectives.hpp"
#include "pipeline/parallel.hpp"
#include "selection/selection.hpp"
#include "text/text.hpp"
#include "util/errors.hpp"
#include "util/version.hpp"

namespace gapsum::pipeline {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// ---------------------------------------------------------------- options

std::string GetString(const json& o, const char* key,
                      const std::string& fallback) {
  const auto it = o.find(key);
  if (it == o.end() || it->is_null()) return fallback;
  if (!it->is_string()) {
    throw ConfigError(std::string("option '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

std::string RequireString(const json& o, const char* key) {
  const std::string v = GetString(o, key, "");
  if (v.empty()) {
    throw ConfigError(std::string("option '") + key + "' is required");
  }
  return v;
}

double GetDouble(const json& o, const char* key, double fallback) {
  const auto it = o.find(key);
  if (it == o.end() || it->is_null()) return fallback;
  if (!it->is_number()) {
    throw ConfigError(std::string("option '") + key + "' must be a number");
  }
  return it->get<double>();
}

std::uint64_t GetU64(const json& o, const char* key, std::uint64_t fallback) {
  const auto it = o.find(key);
  if (it == o.end() || it->is_null()) return fallback;
  if (it->is_number_unsigned()) return it->get<std::uint64_t>();
  if (it->is_number_integer() && it->get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(it->get<std::int64_t>());
  }
  throw ConfigError(std::string("option '") + key +
                    "' must be a non-negative integer");
}

bool GetBool(const json& o, const char* key, bool fallback) {
  const auto it = o.find(key);
  if (it == o.end() || it->is_null()) return fallback;
  if (!it->is_boolean()) {
    throw ConfigError(std::string("option '") + key + "' must be a boolean");
  }
  return it->get<bool>();
}

struct CommonOptions {
  std::string input;
  std::string output;
  std::string manifest_path;
  unsigned workers = 1;
  bool ordered = true;
  std::uint64_t seed = 0;
};

CommonOptions ParseCommon(const json& o, bool require_input,
                          bool require_output) {
  CommonOptions c;
  c.input = require_input ? RequireString(o, "input") : GetString(o, "input", "");
  c.output =
      require_output ? RequireString(o, "output") : GetString(o, "output", "");
  c.manifest_path = GetString(o, "manifest", "");
  c.workers = static_cast<unsigned>(
      std::max<std::uint64_t>(1, GetU64(o, "workers", 1)));
  c.ordered = GetBool(o, "ordered", true);
  c.seed = GetU64(o, "seed", 0);
  return c;
}

std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input file: " + path);
  return in;
}

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  return out;
}

void WriteJsonFile(const std::string& path, const json& value) {
  std::ofstream out = OpenOutput(path);
  out << value.dump(2) << '\n';
  if (!out) throw IoError("cannot write file: " + path);
}

// Parses a {"id","text"} record; nullopt for anything malformed.
std::optional<std::pair<std::string, std::string>> ParseCorpusRecord(
    const std::string& line) {
  json rec;
  try {
    rec = json::parse(line);
  } catch (const json::exception&) {
    return std::nullopt;
  }
  if (!rec.is_object() || !rec.contains("id") || !rec["id"].is_string() ||
      !rec.contains("text") || !rec["text"].is_string()) {
    return std::nullopt;
  }
  return std::make_pair(rec["id"].get<std::string>(),
                        rec["text"].get<std::string>());
}

cleaning::CleaningConfig ParseCleaningConfig(const json& o) {
  cleaning::CleaningConfig cfg = cleaning::CleaningConfig::Defaults();
  cfg.min_words_per_sentence = static_cast<std::size_t>(
      GetU64(o, "min_words_per_sentence", cfg.min_words_per_sentence));
  cfg.min_sentences =
      static_cast<std::size_t>(GetU64(o, "min_sentences", cfg.min_sentences));
  cfg.target_language = GetString(o, "target_language", cfg.target_language);
  cfg.language_threshold =
      GetDouble(o, "language_threshold", cfg.language_threshold);
  if (cfg.language_threshold < 0.0 || cfg.language_threshold > 1.0) {
    throw ConfigError("language_threshold must be in [0, 1]");
  }

  if (const auto it = o.find("blacklist"); it != o.end() && !it->is_null()) {
    if (!it->is_array()) throw ConfigError("blacklist must be an array");
    cfg.blacklist.clear();
    for (const auto& entry : *it) {
      if (!entry.is_string()) throw ConfigError("blacklist must hold strings");
      cfg.blacklist.push_back(text::Normalize(entry.get<std::string>()));
    }
  } else if (const std::string path = GetString(o, "blacklist_path", "");
             !path.empty()) {
    std::ifstream in = OpenInput(path);
    cfg.blacklist.clear();
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      cfg.blacklist.push_back(text::Normalize(line));
    }
  }
  return cfg;
}

json CleaningConfigJson(const cleaning::CleaningConfig& cfg,
                        bool language_filter) {
  return json{{"min_words_per_sentence", cfg.min_words_per_sentence},
              {"min_sentences", cfg.min_sentences},
              {"blacklist", cfg.blacklist},
              {"target_language", cfg.target_language},
              {"language_threshold", cfg.language_threshold},
              {"language_filter", language_filter}};
}

json CleaningReportJson(const cleaning::CleaningReport& r) {
  return json{{"docs_in", r.docs_in},
              {"docs_out", r.docs_out},
              {"sentences_dropped_by_rule",
               {{"short_sentence", r.sentences_dropped_short},
                {"no_terminator", r.sentences_dropped_terminator},
                {"blacklist", r.sentences_dropped_blacklist}}},
              {"rejected_too_few_sentences", r.rejected_too_few_sentences},
              {"non_target_language_docs", r.non_target_language_docs},
              {"duplicates_removed", r.duplicates_removed},
              {"language_flagged_kept", r.language_flagged_kept},
              {"unreadable_records", r.unreadable_records}};
}

objectives::ObjectiveConfig ParseObjectiveConfig(const json& o,
                                                 std::uint64_t seed) {
  objectives::ObjectiveConfig cfg;
  cfg.objective =
      objectives::ObjectiveFromName(GetString(o, "objective", "tss_msr"));
  cfg.mask_rate = GetDouble(o, "mask_rate", cfg.mask_rate);
  cfg.shuffle_fraction = GetDouble(o, "shuffle_fraction", cfg.shuffle_fraction);
  cfg.span_fraction = GetDouble(o, "span_fraction", cfg.span_fraction);
  cfg.msr_reorder_doc_fraction =
      GetDouble(o, "msr_fraction", cfg.msr_reorder_doc_fraction);
  cfg.selection_ratio = GetDouble(o, "ratio", cfg.selection_ratio);
  cfg.mask_token = GetString(o, "mask_token", cfg.mask_token);
  cfg.seed = seed;
  cfg.Validate();
  return cfg;
}

json ObjectiveConfigJson(const objectives::ObjectiveConfig& cfg) {
  return json{{"objective", objectives::ObjectiveName(cfg.objective)},
              {"mask_rate", cfg.mask_rate},
              {"shuffle_fraction", cfg.shuffle_fraction},
              {"span_fraction", cfg.span_fraction},
              {"msr_fraction", cfg.msr_reorder_doc_fraction},
              {"ratio", cfg.selection_ratio},
              {"mask_token", cfg.mask_token},
              {"seed", cfg.seed}};
}

scoring::ScoreKind ParseScoreKind(const json& o) {
  const std::string name = GetString(o, "score", "rouge1");
  if (name == "rouge1") return scoring::ScoreKind::kRouge1F1;
  if (name == "semantic") return scoring::ScoreKind::kEmbeddingF1;
  throw ConfigError("score must be 'rouge1' or 'semantic'");
}

const char* ScoreKindName(scoring::ScoreKind kind) {
  return kind == scoring::ScoreKind::kRouge1F1 ? "rouge1" : "semantic";
}

// Loads the table when semantic scoring is requested; validates the path
// before any record is processed.
std::unique_ptr<embedding::EmbeddingTable> LoadTableIfSemantic(
    const json& o, scoring::ScoreKind kind) {
  if (kind != scoring::ScoreKind::kEmbeddingF1) return nullptr;
  const std::string path = RequireString(o, "embeddings");
  const std::size_t limit =
      static_cast<std::size_t>(GetU64(o, "embedding_limit", 0));
  return std::make_unique<embedding::EmbeddingTable>(
      embedding::EmbeddingTable::Load(path, limit));
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

json ManifestSkeleton(const char* command, const CommonOptions& c) {
  return json{{"version", kVersion}, {"command", command},
              {"input", c.input},    {"output", c.output},
              {"workers", c.workers}, {"ordered", c.ordered},
              {"seed", c.seed}};
}

void FinishManifest(json& manifest, const CommonOptions& c,
                    std::uint64_t records_in, const Stopwatch& watch) {
  const double wall = watch.Seconds();
  manifest["records_in"] = records_in;
  manifest["wall_clock_sec"] = wall;
  manifest["docs_per_sec"] =
      wall > 0.0 ? static_cast<double>(records_in) / wall : 0.0;
  if (!c.manifest_path.empty()) WriteJsonFile(c.manifest_path, manifest);
}

}  // namespace

// ------------------------------------------------------------------ clean

json RunClean(const json& options) {
  const CommonOptions common = ParseCommon(options, true, true);
  const cleaning::CleaningConfig cfg = ParseCleaningConfig(options);
  const bool language_filter = GetBool(options, "language_filter", true);
  const std::string report_path = GetString(options, "report", "");
  const cleaning::LanguageProbe probe =
      language_filter ? cleaning::BuiltInLanguageProbe()
                      : cleaning::LanguageProbe{};

  std::ifstream in = OpenInput(common.input);
  std::ofstream out = OpenOutput(common.output);

  std::mutex report_mutex;
  cleaning::CleaningReport report;

  const Stopwatch watch;
  const LineFn fn = [&](std::string&& line,
                        std::uint64_t) -> std::optional<std::string> {
    const auto rec = ParseCorpusRecord(line);
    if (!rec) {
      std::lock_guard<std::mutex> lock(report_mutex);
      ++report.docs_in;
      ++report.unreadable_records;
      return std::nullopt;
    }
    cleaning::CleanOutcome outcome = cleaning::CleanRecord(rec->second, cfg, probe);
    {
      std::lock_guard<std::mutex> lock(report_mutex);
      report.Merge(outcome.report);
    }
    if (!outcome.kept) return std::nullopt;
    ordered_json record;
    record["id"] = rec->first;
    record["text"] = outcome.cleaned_text;
    return record.dump();
  };

  const std::uint64_t lines =
      ProcessLines(in, out, fn, {common.workers, common.ordered});
  out.flush();
  if (!out) throw IoError("cannot write output file: " + common.output);

  json manifest = ManifestSkeleton("clean", common);
  manifest["config"] = CleaningConfigJson(cfg, language_filter);
  manifest["report"] = CleaningReportJson(report);
  manifest["records_out"] = report.docs_out;
  FinishManifest(manifest, common, lines, watch);
  if (!report_path.empty()) WriteJsonFile(report_path, CleaningReportJson(report));
  return manifest;
}

// ------------------------------------------------------------------ build

json RunBuild(const json& options) {
  const CommonOptions common = ParseCommon(options, true, true);
  const objectives::ObjectiveConfig ocfg =
      ParseObjectiveConfig(options, common.seed);
  const scoring::ScoreKind kind = ParseScoreKind(options);
  const std::unique_ptr<embedding::EmbeddingTable> table =
      LoadTableIfSemantic(options, kind);

  const bool do_clean = GetBool(options, "clean", false);
  const cleaning::CleaningConfig ccfg = ParseCleaningConfig(options);
  const bool language_filter = GetBool(options, "language_filter", true);
  const cleaning::LanguageProbe probe =
      do_clean && language_filter ? cleaning::BuiltInLanguageProbe()
                                  : cleaning::LanguageProbe{};

  std::ifstream in = OpenInput(common.input);
  std::ofstream out = OpenOutput(common.output);

  std::atomic<std::uint64_t> unreadable{0};
  std::atomic<std::uint64_t> skipped_short_docs{0};
  std::atomic<std::uint64_t> failed{0};
  std::atomic<std::uint64_t> fallback_selections{0};
  std::array<std::atomic<std::uint64_t>, 4> branch_counts{};
  std::mutex report_mutex;
  cleaning::CleaningReport clean_report;

  const Stopwatch watch;
  const LineFn fn = [&](std::string&& line,
                        std::uint64_t) -> std::optional<std::string> {
    const auto rec = ParseCorpusRecord(line);
    if (!rec) {
      ++unreadable;
      return std::nullopt;
    }
    std::string doc_text = rec->second;
    if (do_clean) {
      cleaning::CleanOutcome outcome =
          cleaning::CleanRecord(doc_text, ccfg, probe);
      {
        std::lock_guard<std::mutex> lock(report_mutex);
        clean_report.Merge(outcome.report);
      }
      if (!outcome.kept) return std::nullopt;
      doc_text = std::move(outcome.cleaned_text);
    }

    const text::Document doc = text::Document::Make(rec->first, doc_text);
    if (doc.sentences.size() < 2) {
      ++skipped_short_docs;
      return std::nullopt;
    }
    objectives::PretrainExample ex;
    try {
      const selection::SelectionResult sel = selection::SelectTopSentences(
          doc, kind, ocfg.selection_ratio, table.get());
      if (sel.used_fallback) ++fallback_selections;
      ex = objectives::BuildExample(doc, sel, ocfg);
    } catch (const std::exception&) {
      ++failed;
      return std::nullopt;
    }
    ++branch_counts[static_cast<std::size_t>(ex.branch)];

    ordered_json record;
    record["doc_id"] = ex.doc_id;
    record["objective"] = objectives::ObjectiveName(ex.objective);
    record["branch"] = objectives::BranchName(ex.branch);
    record["input"] = ex.input_text;
    record["target"] = ex.target_text;
    record["masked_indices"] = ex.masked_indices;
    return record.dump();
  };

  const std::uint64_t lines =
      ProcessLines(in, out, fn, {common.workers, common.ordered});
  out.flush();
  if (!out) throw IoError("cannot write output file: " + common.output);

  json manifest = ManifestSkeleton("build", common);
  manifest["config"] = ObjectiveConfigJson(ocfg);
  manifest["config"]["score"] = ScoreKindName(kind);
  manifest["config"]["clean"] = do_clean;
  if (do_clean) {
    manifest["config"]["cleaning"] = CleaningConfigJson(ccfg, language_filter);
    manifest["cleaning_report"] = CleaningReportJson(clean_report);
  }
  const std::uint64_t mask = branch_counts[0].load();
  const std::uint64_t keep = branch_counts[1].load();
  const std::uint64_t shuffle = branch_counts[2].load();
  const std::uint64_t reorder = branch_counts[3].load();
  manifest["branch_counts"] = {{"mask", mask},
                               {"keep", keep},
                               {"span_shuffle", shuffle},
                               {"reorder", reorder}};
  manifest["records_out"] = mask + keep + shuffle + reorder;
  manifest["skipped"] = {{"unreadable_records", unreadable.load()},
                         {"short_documents", skipped_short_docs.load()},
                         {"failed_documents", failed.load()}};
  manifest["fallback_selections"] = fallback_selections.load();
  FinishManifest(manifest, common, lines, watch);
  return manifest;
}

// ------------------------------------------------------------------ score

json RunScore(const json& options) {
  const CommonOptions common = ParseCommon(options, true, true);
  const scoring::ScoreKind kind = ParseScoreKind(options);
  const double ratio = GetDouble(options, "ratio", 0.3);
  const std::unique_ptr<embedding::EmbeddingTable> table =
      LoadTableIfSemantic(options, kind);

  std::ifstream in = OpenInput(common.input);
  std::ofstream out = OpenOutput(common.output);

  std::atomic<std::uint64_t> unreadable{0};
  std::atomic<std::uint64_t> skipped_short_docs{0};
  std::atomic<std::uint64_t> failed{0};
  std::atomic<std::uint64_t> written{0};

  const Stopwatch watch;
  const LineFn fn = [&](std::string&& line,
                        std::uint64_t) -> std::optional<std::string> {
    const auto rec = ParseCorpusRecord(line);
    if (!rec) {
      ++unreadable;
      return std::nullopt;
    }
    const text::Document doc = text::Document::Make(rec->first, rec->second);
    if (doc.sentences.size() < 2) {
      ++skipped_short_docs;
      return std::nullopt;
    }
    selection::SelectionResult sel;
    try {
      sel = selection::SelectTopSentences(doc, kind, ratio, table.get());
    } catch (const std::exception&) {
      ++failed;
      return std::nullopt;
    }
    ++written;
    ordered_json record;
    record["doc_id"] = doc.id;
    record["m"] = sel.m;
    record["kind"] = ScoreKindName(sel.kind_used);
    record["fallback"] = sel.used_fallback;
    record["scores"] = sel.scores;
    record["selected"] = sel.selected;
    return record.dump();
  };

  const std::uint64_t lines =
      ProcessLines(in, out, fn, {common.workers, common.ordered});
  out.flush();
  if (!out) throw IoError("cannot write output file: " + common.output);

  json manifest = ManifestSkeleton("score", common);
  manifest["config"] = {{"score", ScoreKindName(kind)}, {"ratio", ratio}};
  manifest["records_out"] = written.load();
  manifest["skipped"] = {{"unreadable_records", unreadable.load()},
                         {"short_documents", skipped_short_docs.load()},
                         {"failed_documents", failed.load()}};
  FinishManifest(manifest, common, lines, watch);
  return manifest;
}

// ------------------------------------------------------------------- eval

namespace {

std::unordered_map<std::string, std::string> LoadCorpusMap(
    const std::string& path, std::uint64_t* unreadable) {
  std::ifstream in = OpenInput(path);
  std::unordered_map<std::string, std::string> map;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto rec = ParseCorpusRecord(line);
    if (!rec) {
      ++*unreadable;
      continue;
    }
    map[rec->first] = rec->second;
  }
  return map;
}

metrics::EntitySet NormalizedEntitySet(const json& arr) {
  metrics::EntitySet set;
  if (!arr.is_array()) return set;
  for (const auto& e : arr) {
    if (e.is_string()) set.insert(text::Normalize(e.get<std::string>()));
  }
  return set;
}

json PrfJson(const metrics::PrfScore& s) {
  return json{{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

}  // namespace

json RunEval(const json& options) {
  const std::string articles_path = RequireString(options, "articles");
  const std::string refs_path = RequireString(options, "refs");
  const std::string hyps_path = RequireString(options, "hyps");
  const std::string entities_path = GetString(options, "entities", "");
  const std::string output_path = GetString(options, "output", "");

  std::unique_ptr<embedding::EmbeddingTable> table;
  if (const std::string path = GetString(options, "embeddings", "");
      !path.empty()) {
    table = std::make_unique<embedding::EmbeddingTable>(embedding::EmbeddingTable::Load(
        path, static_cast<std::size_t>(GetU64(options, "embedding_limit", 0))));
  }

  std::uint64_t unreadable = 0;
  const auto refs = LoadCorpusMap(refs_path, &unreadable);
  const auto hyps = LoadCorpusMap(hyps_path, &unreadable);

  std::unordered_map<std::string, metrics::EntityTriple> entities;
  if (!entities_path.empty()) {
    std::ifstream in = OpenInput(entities_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json rec;
      try {
        rec = json::parse(line);
      } catch (const json::exception&) {
        ++unreadable;
        continue;
      }
      if (!rec.is_object() || !rec.contains("id") || !rec["id"].is_string()) {
        ++unreadable;
        continue;
      }
      metrics::EntityTriple triple;
      triple.source = NormalizedEntitySet(rec.value("source", json::array()));
      triple.reference =
          NormalizedEntitySet(rec.value("reference", json::array()));
      triple.hypothesis =
          NormalizedEntitySet(rec.value("hypothesis", json::array()));
      entities[rec["id"].get<std::string>()] = std::move(triple);
    }
  }

  metrics::CorpusAccumulator acc;
  std::uint64_t missing_pair = 0;
  std::uint64_t failed = 0;
  std::uint64_t articles_in = 0;

  const Stopwatch watch;
  std::ifstream in = OpenInput(articles_path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto rec = ParseCorpusRecord(line);
    if (!rec) {
      ++unreadable;
      continue;
    }
    ++articles_in;
    const auto ref_it = refs.find(rec->first);
    const auto hyp_it = hyps.find(rec->first);
    if (ref_it == refs.end() || hyp_it == hyps.end()) {
      ++missing_pair;
      continue;
    }
    const text::Document article = text::Document::Make(rec->first, rec->second);
    const text::Document reference =
        text::Document::Make(rec->first, ref_it->second);
    const text::Document hypothesis =
        text::Document::Make(rec->first, hyp_it->second);
    const auto ent_it = entities.find(rec->first);
    try {
      acc.Add(metrics::EvaluatePair(
          article, reference, hypothesis, table.get(),
          ent_it != entities.end() ? &ent_it->second : nullptr));
    } catch (const std::exception&) {
      ++failed;
    }
  }

  const metrics::MetricReport mean = acc.Mean();
  json report{
      {"notes",
       "tokens use the library normalizer and whitespace/punctuation "
       "tokenizer; no stemming"},
      {"count", acc.count()},
      {"rouge1", PrfJson(mean.rouge1)},
      {"rouge2", PrfJson(mean.rouge2)},
      {"rougeL", PrfJson(mean.rougeL)},
      {"density", mean.density},
      {"coverage", mean.coverage},
  };
  if (mean.embed.has_value()) {
    report["embed"] = json{{"precision", mean.embed->precision},
                           {"recall", mean.embed->recall},
                           {"f1", mean.embed->f1}};
  } else {
    report["embed"] = nullptr;
  }
  if (mean.factual.has_value()) {
    report["factual"] = json{{"precision_source", mean.factual->precision_source},
                             {"f1_target", mean.factual->f1_target}};
  } else {
    report["factual"] = nullptr;
  }
  report["skipped"] = {{"unreadable_records", unreadable},
                       {"missing_pair", missing_pair},
                       {"failed_pairs", failed}};

  if (!output_path.empty()) WriteJsonFile(output_path, report);

  CommonOptions common;
  common.input = articles_path;
  common.output = output_path;
  common.manifest_path = GetString(options, "manifest", "");
  json manifest = ManifestSkeleton("eval", common);
  manifest["report"] = report;
  manifest["records_out"] = acc.count();
  FinishManifest(manifest, common, articles_in, watch);
  return manifest;
}

// ------------------------------------------------------------------ stats

json RunStats(const json& options) {
  const std::string input_path = GetString(options, "input", "");
  const std::string pairs_path = GetString(options, "pairs", "");
  const std::string output_path = GetString(options, "output", "");
  if (input_path.empty() && pairs_path.empty()) {
    throw ConfigError("stats needs 'input' and/or 'pairs'");
  }

  const Stopwatch watch;
  json result{{"version", kVersion}, {"command", "stats"}};
  std::uint64_t unreadable = 0;
  std::uint64_t records = 0;

  if (!input_path.empty()) {
    std::ifstream in = OpenInput(input_path);
    std::uint64_t docs = 0, sentences = 0, tokens = 0;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      ++records;
      const auto rec = ParseCorpusRecord(line);
      if (!rec) {
        ++unreadable;
        continue;
      }
      const text::Document doc = text::Document::Make(rec->first, rec->second);
      ++docs;
      sentences += doc.sentences.size();
      for (const auto& s : doc.sentences) tokens += s.tokens.size();
    }
    result["corpus"] = {
        {"documents", docs},
        {"sentences", sentences},
        {"tokens", tokens},
        {"avg_sentences_per_doc",
         docs > 0 ? static_cast<double>(sentences) / docs : 0.0},
        {"avg_tokens_per_doc",
         docs > 0 ? static_cast<double>(tokens) / docs : 0.0},
        {"avg_tokens_per_sentence",
         sentences > 0 ? static_cast<double>(tokens) / sentences : 0.0},
    };
  }

  if (!pairs_path.empty()) {
    std::ifstream in = OpenInput(pairs_path);
    std::vector<double> densities;
    std::vector<double> coverages;
    std::uint64_t pairs = 0, article_tokens = 0, summary_tokens = 0;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      ++records;
      json rec;
      try {
        rec = json::parse(line);
      } catch (const json::exception&) {
        ++unreadable;
        continue;
      }
      if (!rec.is_object() || !rec.contains("article") ||
          !rec["article"].is_string() || !rec.contains("summary") ||
          !rec["summary"].is_string()) {
        ++unreadable;
        continue;
      }
      const text::Document article =
          text::Document::Make("a", rec["article"].get<std::string>());
      const text::Document summary =
          text::Document::Make("s", rec["summary"].get<std::string>());
      const std::vector<std::string> atoks = article.AllTokens();
      const std::vector<std::string> stoks = summary.AllTokens();
      if (stoks.empty()) {
        ++unreadable;
        continue;
      }
      const auto dc = metrics::DensityCoverage(
          metrics::ExtractiveFragments(atoks, stoks), stoks.size());
      densities.push_back(dc.density);
      coverages.push_back(dc.coverage);
      ++pairs;
      article_tokens += atoks.size();
      summary_tokens += stoks.size();
    }

    const auto histogram = [](const std::vector<double>& values, double lo,
                              double hi, std::size_t bins) {
      std::vector<double> edges(bins + 1);
      for (std::size_t i = 0; i <= bins; ++i) {
        edges[i] = lo + (hi - lo) * static_cast<double>(i) /
                            static_cast<double>(bins);
      }
      std::vector<std::uint64_t> counts(bins, 0);
      for (const double v : values) {
        std::size_t b =
            hi > lo ? static_cast<std::size_t>((v - lo) / (hi - lo) *
                                               static_cast<double>(bins))
                    : 0;
        if (b >= bins) b = bins - 1;  // top edge inclusive
        ++counts[b];
      }
      return json{{"edges", edges}, {"counts", counts}};
    };

    double max_density = 1.0;
    for (const double d : densities) max_density = std::max(max_density, d);
    result["pairs"] = {
        {"count", pairs},
        {"avg_article_tokens",
         pairs > 0 ? static_cast<double>(article_tokens) / pairs : 0.0},
        {"avg_summary_tokens",
         pairs > 0 ? static_cast<double>(summary_tokens) / pairs : 0.0},
        {"avg_density",
         pairs > 0
             ? std::accumulate(densities.begin(), densities.end(), 0.0) / pairs
             : 0.0},
        {"avg_coverage",
         pairs > 0
             ? std::accumulate(coverages.begin(), coverages.end(), 0.0) / pairs
             : 0.0},
        {"density_histogram",
         histogram(densities, 0.0, std::ceil(max_density), 20)},
        {"coverage_histogram", histogram(coverages, 0.0, 1.0, 20)},
    };
  }

  result["unreadable_records"] = unreadable;
  result["records_in"] = records;
  result["wall_clock_sec"] = watch.Seconds();
  if (!output_path.empty()) WriteJsonFile(output_path, result);
  return result;
}

json Run(const std::string& command, const json& options) {
  if (command == "clean") return RunClean(options);
  if (command == "build") return RunBuild(options);
  if (command == "score") return RunScore(options);
  if (command == "eval") return RunEval(options);
  if (command == "stats") return RunStats(options);
  throw ConfigError("unknown command: " + command);
}

}  // namespace gapsum::pipeline
