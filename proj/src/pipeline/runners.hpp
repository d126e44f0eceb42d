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
// End-to-end subcommand runners. Every runner takes one JSON options
// object, streams JSON Lines files, and returns a run manifest (also JSON).
// Option keys common to all runners:
//
//   input    path to the input JSONL corpus, records {"id","text"}
//   output   path for the produced file
//   manifest optional path; the returned manifest is also written there
//   workers  parallel workers (default 1)
//   ordered  re-sequence worker output to input order (default true)
//   seed     global seed, u64 (default 0)
//
// Per-runner keys are documented on each function. Config errors throw
// ConfigError, unreadable/unwritable files throw IoError; malformed input
// records are counted and skipped, never fatal.

#ifndef GAPSUM_PIPELINE_RUNNERS_HPP_
#define GAPSUM_PIPELINE_RUNNERS_HPP_

#include <json.hpp>

namespace gapsum::pipeline {

// clean: sentence rules -> min-sentence rejection -> language filter ->
// paragraph dedup. Extra keys: "min_words_per_sentence", "min_sentences",
// "blacklist" (array) or "blacklist_path" (file, one keyword per line),
// "target_language" (default "fa"), "language_threshold" (default 0.99),
// "language_filter" (bool, default true), "report" (path for the cleaning
// report JSON). Output records: {"id","text"}.
nlohmann::json RunClean(const nlohmann::json& options);

// build: segment -> select -> objective example per document. Extra keys:
// "objective" (tss_rouge|tss_ss|tss_sh|tss_msr, default tss_msr),
// "mask_rate", "shuffle_fraction", "span_fraction", "msr_fraction",
// "ratio", "mask_token", "score" (rouge1|semantic, default rouge1),
// "embeddings" (vec path, required for semantic), "embedding_limit",
// "clean" (bool, default false: records are assumed pre-cleaned) plus the
// clean keys above when enabled. Output records exactly
// {"doc_id","objective","branch","input","target","masked_indices"}.
nlohmann::json RunBuild(const nlohmann::json& options);

// score: per-document selection dump, no objective. Extra keys: "score",
// "ratio", "embeddings", "embedding_limit". Output records:
// {"doc_id","m","kind","fallback","scores","selected"}.
nlohmann::json RunScore(const nlohmann::json& options);

// eval: corpus-level metric report. Keys: "articles", "refs", "hyps"
// (JSONL paths, records {"id","text"}), optional "embeddings",
// "embedding_limit", "entities" (JSONL {"id","source","reference",
// "hypothesis"}), "output" (report JSON path). References and hypotheses
// are joined to articles by id.
nlohmann::json RunEval(const nlohmann::json& options);

// stats: corpus shape statistics; with "pairs" (JSONL {"id","article",
// "summary"}) also density/coverage distributions. Keys: "input"
// (optional when "pairs" given), "pairs", "output".
nlohmann::json RunStats(const nlohmann::json& options);

// Dispatches on command name: clean|build|score|eval|stats.
// Unknown commands throw ConfigError.
nlohmann::json Run(const std::string& command, const nlohmann::json& options);

}  // namespace gapsum::pipeline

#endif  // GAPSUM_PIPELINE_RUNNERS_HPP_
