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

#include "gapsum/gapsum.h"

#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "embedding/embedding_table.hpp"
#include "metrics/metrics.hpp"
#include "objectives/objectives.hpp"
#include "pipeline/runners.hpp"
#include "selection/selection.hpp"
#include "text/text.hpp"
#include "util/errors.hpp"
#include "util/version.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

thread_local std::string g_last_error;

void SetError(const std::string& message) { g_last_error = message; }

gapsum_status Fail(gapsum_status status, const std::string& message) {
  SetError(message);
  return status;
}

// Translates in-flight exceptions to a status + thread-local message.
gapsum_status FailFromException() {
  try {
    throw;
  } catch (const gapsum::ConfigError& e) {
    return Fail(GAPSUM_ERR_CONFIG, e.what());
  } catch (const gapsum::IoError& e) {
    return Fail(GAPSUM_ERR_IO, e.what());
  } catch (const gapsum::FormatError& e) {
    return Fail(GAPSUM_ERR_FORMAT, e.what());
  } catch (const json::exception& e) {
    return Fail(GAPSUM_ERR_FORMAT, e.what());
  } catch (const std::invalid_argument& e) {
    return Fail(GAPSUM_ERR_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(GAPSUM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(GAPSUM_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(GAPSUM_ERR_INTERNAL, "unknown error");
  }
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(::operator new(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

gapsum_status RequireArg(const void* p, const char* name) {
  if (p != nullptr) return GAPSUM_OK;
  return Fail(GAPSUM_ERR_ARGUMENT, std::string(name) + " must not be NULL");
}

std::vector<std::string> TokensFromJson(const char* tokens_json,
                                        const char* name) {
  json parsed;
  try {
    parsed = json::parse(tokens_json);
  } catch (const json::exception& e) {
    throw gapsum::FormatError(std::string(name) + ": " + e.what());
  }
  if (!parsed.is_array()) {
    throw gapsum::FormatError(std::string(name) +
                              " must be a JSON array of strings");
  }
  std::vector<std::string> tokens;
  tokens.reserve(parsed.size());
  for (const auto& t : parsed) {
    if (!t.is_string()) {
      throw gapsum::FormatError(std::string(name) +
                                " must be a JSON array of strings");
    }
    tokens.push_back(t.get<std::string>());
  }
  return tokens;
}

const gapsum::embedding::EmbeddingTable* Unwrap(
    const gapsum_embeddings* table) {
  return reinterpret_cast<const gapsum::embedding::EmbeddingTable*>(table);
}

void AssignIf(double* out, double value) {
  if (out != nullptr) *out = value;
}

gapsum::scoring::ScoreKind ScoreKindFromOptions(const json& options) {
  const std::string name = options.value("score", "rouge1");
  if (name == "rouge1") return gapsum::scoring::ScoreKind::kRouge1F1;
  if (name == "semantic") return gapsum::scoring::ScoreKind::kEmbeddingF1;
  throw gapsum::ConfigError("score must be 'rouge1' or 'semantic'");
}

json ParseOptions(const char* options_json) {
  if (options_json == nullptr || options_json[0] == '\0') {
    return json::object();
  }
  json parsed = json::parse(options_json);  // json::exception maps to FORMAT
  if (!parsed.is_object()) {
    throw gapsum::ConfigError("options must be a JSON object");
  }
  return parsed;
}

}  // namespace

extern "C" {

const char* gapsum_version(void) { return gapsum::kVersion; }

const char* gapsum_last_error(void) { return g_last_error.c_str(); }

void gapsum_string_free(char* s) { ::operator delete(s); }

/* --------------------------------------------------------------- text --- */

gapsum_status gapsum_normalize(const char* text, char** out) {
  if (auto s = RequireArg(text, "text")) return s;
  if (auto s = RequireArg(out, "out")) return s;
  try {
    *out = CopyString(gapsum::text::Normalize(text));
    return GAPSUM_OK;
  } catch (...) {
    return FailFromException();
  }
}

gapsum_status gapsum_split_sentences(const char* text, char** out_json) {
  if (auto s = RequireArg(text, "text")) return s;
  if (auto s = RequireArg(out_json, "out_json")) return s;
  try {
    json out = json::array();
    for (const auto& sentence :
         gapsum::text::SplitSentences(gapsum::text::Normalize(text))) {
      out.push_back(sentence.text);
    }
    *out_json = CopyString(out.dump());
    return GAPSUM_OK;
  } catch (...) {
    return FailFromException();
  }
}

gapsum_status gapsum_tokenize(const char* text, char** out_json) {
  if (auto s = RequireArg(text, "text")) return s;
  if (auto s = RequireArg(out_json, "out_json")) return s;
  try {
    *out_json = CopyString(
        json(gapsum::text::Tokenize(gapsum::text::Normalize(text))).dump());
    return GAPSUM_OK;
  } catch (...) {
    return FailFromException();
  }
}

/* --------------------------------------------------------- embeddings --- */

gapsum_status gapsum_embeddings_open(const char* path, size_t limit,
                                     gapsum_embeddings** out) {
  if (auto s = RequireArg(path, "path")) return s;
  if (auto s = RequireArg(out, "out")) return s;
  try {
    auto* table = new gapsum::embedding::EmbeddingTable(
        gapsum::embedding::EmbeddingTable::Load(path, limit));
    *out = reinterpret_cast<gapsum_embeddings*>(table);
    return GAPSUM_OK;
  } catch (...) {
    return FailFromException();
  }
}

void gapsum_embeddings_close(gapsum_embeddings* table) {
  delete reinterpret_cast<gapsum::embedding::EmbeddingTable*>(table);
}

size_t gapsum_embeddings_size(const gapsum_embeddings* table) {
  return table == nullptr ? 0 : Unwrap(table)->size();
}

size_t gapsum_embeddings_dim(const gapsum_embeddings* table) {
  return table == nullptr ? 0 : Unwrap(table)->dimension();
}

/* ------------------------------------------------------------ metrics --- */

gapsum_status gapsum_rouge(const char* candidate_json,
                           const char* reference_json, int n, double* precision,
                           double* recall, double* f1) {
  if (auto s = RequireArg(candidate_json, "candidate_json")) return s;
  if (auto s = RequireArg(reference_json, "reference_json")) return s;
  if (n < 0) return Fail(GAPSUM_ERR_ARGUMENT, "n must be >= 0");
  try {
    const auto cand = TokensFromJson(candidate_json, "candidate_json");
    const auto ref = TokensFromJson(reference_json, "reference_json");
    const gapsum::metrics::PrfScore score =
        n == 0 ? gapsum::metrics::RougeL(cand, ref)
               : gapsum::metrics::RougeN(cand, ref, static_cast<std::size_t>(n));
    AssignIf(precision, score.precision);
    AssignIf(recall, score.recall);
    AssignIf(f1, score.f1);
    return GAPSUM_OK;
  } catch (...) {
    return FailFromException();
  }
}

gapsum_status gapsum_embed_score(const gapsum_embeddings* table,
                                 const char* candidate_json,
                                 const char* reference_json, double* precision,
                                 double* recall, double* f1, int* degenerate) {
  if (auto s = RequireArg(table, "table")) return s;
  if (auto s = RequireArg(candidate_json, "candidate_json")) return s;
  if (auto s = RequireArg(reference_json, "reference_json")) return s;
  try {
    const auto cand = TokensFromJson(candidate_json, "candidate_json");
    const auto ref = TokensFromJson(reference_json, "reference_json");
    const gapsum::scoring::EmbeddingScores score =
        gapsum::scoring::EmbeddingF1(cand, ref, *Unwrap(table));
    AssignIf(precision, score.precision);
    AssignIf(recall, score.recall);
    AssignIf(f1, score.f1);
    if (degenerate != nullptr) *degenerate = score.degenerate ? 1 : 0;
    return GAPSUM_OK;
  } catch (...) {
    return FailFromException();
  }
}

gapsum_status gapsum_fragment_stats(const char* article_json,
                                    const char* summary_json, double* density,
                                    double* coverage) {
  if (auto s = RequireArg(article_json, "article_json")) return s;
  if (auto s = RequireArg(summary_json, "summary_json")) return s;
  try {
    const auto article = TokensFromJson(article_json, "article_json");
    const auto summary = TokensFromJson(summary_json, "summary_json");
    const auto result = gapsum::metrics::DensityCoverage(
        gapsum::metrics::ExtractiveFragments(article, summary), summary.size());
    AssignIf(density, result.density);
    AssignIf(coverage, result.coverage);
    return GAPSUM_OK;
  } catch (...) {
    return FailFromException();
  }
}

/* ---------------------------------------------------------- selection --- */

gapsum_status gapsum_select(const char* doc_text, const char* options_json,
                            const gapsum_embeddings* table, char** out_json) {
  if (auto s = RequireArg(doc_text, "doc_text")) return s;
  if (auto s = RequireArg(out_json, "out_json")) return s;
  try {
    const json options = ParseOptions(options_json);
    const auto kind = ScoreKindFromOptions(options);
    const double ratio = options.value("ratio", 0.3);
    const gapsum::text::Document doc =
        gapsum::text::Document::Make("doc", doc_text);
    const gapsum::selection::SelectionResult sel =
        gapsum::selection::SelectTopSentences(doc, kind, ratio, Unwrap(table));

    ordered_json out;
    out["m"] = sel.m;
    out["kind"] = sel.kind_used == gapsum::scoring::ScoreKind::kRouge1F1
                      ? "rouge1"
                      : "semantic";
    out["fallback"] = sel.used_fallback;
    out["scores"] = sel.scores;
    out["selected"] = sel.selected;
    json sentences = json::array();
    for (const auto& s : doc.sentences) sentences.push_back(s.text);
    out["sentences"] = std::move(sentences);
    *out_json = CopyString(out.dump());
    return GAPSUM_OK;
  } catch (...) {
    return FailFromException();
  }
}

gapsum_status gapsum_build_example(const char* doc_id, const char* doc_text,
                                   const char* options_json,
                                   const gapsum_embeddings* table,
                                   char** out_json) {
  if (auto s = RequireArg(doc_id, "doc_id")) return s;
  if (auto s = RequireArg(doc_text, "doc_text")) return s;
  if (auto s = RequireArg(out_json, "out_json")) return s;
  try {
    const json options = ParseOptions(options_json);
    const auto kind = ScoreKindFromOptions(options);

    gapsum::objectives::ObjectiveConfig cfg;
    cfg.objective = gapsum::objectives::ObjectiveFromName(
        options.value("objective", "tss_msr"));
    cfg.mask_rate = options.value("mask_rate", cfg.mask_rate);
    cfg.shuffle_fraction =
        options.value("shuffle_fraction", cfg.shuffle_fraction);
    cfg.span_fraction = options.value("span_fraction", cfg.span_fraction);
    cfg.msr_reorder_doc_fraction =
        options.value("msr_fraction", cfg.msr_reorder_doc_fraction);
    cfg.selection_ratio = options.value("ratio", cfg.selection_ratio);
    cfg.mask_token = options.value("mask_token", cfg.mask_token);
    cfg.seed = options.value("seed", std::uint64_t{0});
    cfg.Validate();

    const gapsum::text::Document doc =
        gapsum::text::Document::Make(doc_id, doc_text);
    const gapsum::selection::SelectionResult sel =
        gapsum::selection::SelectTopSentences(doc, kind, cfg.selection_ratio,
                                              Unwrap(table));
    const gapsum::objectives::PretrainExample ex =
        gapsum::objectives::BuildExample(doc, sel, cfg);

    ordered_json out;
    out["doc_id"] = ex.doc_id;
    out["objective"] = gapsum::objectives::ObjectiveName(ex.objective);
    out["branch"] = gapsum::objectives::BranchName(ex.branch);
    out["input"] = ex.input_text;
    out["target"] = ex.target_text;
    out["masked_indices"] = ex.masked_indices;
    *out_json = CopyString(out.dump());
    return GAPSUM_OK;
  } catch (...) {
    return FailFromException();
  }
}

/* --------------------------------------------------------------- runs --- */

gapsum_status gapsum_run(const char* command, const char* options_json,
                         char** out_manifest_json) {
  if (auto s = RequireArg(command, "command")) return s;
  try {
    const json options = ParseOptions(options_json);
    const json manifest = gapsum::pipeline::Run(command, options);
    if (out_manifest_json != nullptr) {
      *out_manifest_json = CopyString(manifest.dump());
    }
    return GAPSUM_OK;
  } catch (...) {
    return FailFromException();
  }
}

}  // extern "C"
