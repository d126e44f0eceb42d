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
// Command-line front end. Flags are folded into one JSON options object
// and handed to the shared library; values from --config fill in whatever
// the command line leaves unset. Exit codes: 0 success, 1 configuration or
// usage error, 2 I/O or data-format error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gapsum/gapsum.h"

namespace {

using nlohmann::json;

using Applier = std::function<void(json&)>;

template <typename T>
void AddOpt(CLI::App* cmd, std::vector<Applier>& appliers, const char* flag,
            const char* key, T& storage, const char* description) {
  CLI::Option* opt = cmd->add_option(flag, storage, description);
  appliers.push_back([opt, key, &storage](json& j) {
    if (opt->count() > 0) j[key] = storage;
  });
}

void AddFlagValue(CLI::App* cmd, std::vector<Applier>& appliers,
                  const char* flag, const char* key, bool value,
                  const char* description) {
  const std::string help(description);
  CLI::Option* opt = cmd->add_flag(std::string(flag), help);
  appliers.push_back([opt, key, value](json& j) {
    if (opt->count() > 0) j[key] = value;
  });
}

int StatusToExit(gapsum_status status) {
  switch (status) {
    case GAPSUM_OK:
      return 0;
    case GAPSUM_ERR_IO:
    case GAPSUM_ERR_FORMAT:
      return 2;
    case GAPSUM_ERR_CONFIG:
    case GAPSUM_ERR_ARGUMENT:
    case GAPSUM_ERR_INTERNAL:
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gapsum: gap-sentence pre-training pairs and summarization "
               "evaluation for Persian corpora"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON file with default options (flags win)");
  std::uint64_t seed = 0;
  CLI::Option* seed_opt =
      app.add_option("--seed", seed, "global seed for all randomness");
  std::uint64_t workers = 1;
  CLI::Option* workers_opt =
      app.add_option("--workers", workers, "parallel worker count");

  // Storage must outlive parsing; every subcommand gets its own applier set.
  std::vector<Applier> appliers;
  std::string in_path, out_path, manifest_path, report_path, blacklist_path;
  std::string objective, mask_token, score, embeddings, target_language;
  std::string articles, refs, hyps, entities, pairs;
  double mask_rate = 0, shuffle_fraction = 0, span_fraction = 0;
  double msr_fraction = 0, ratio = 0, lang_threshold = 0;
  std::uint64_t min_words = 0, min_sentences = 0, embedding_limit = 0;

  CLI::App* clean = app.add_subcommand("clean", "filter a raw corpus");
  AddOpt(clean, appliers, "--in", "input", in_path, "input corpus (JSONL)");
  AddOpt(clean, appliers, "--out", "output", out_path, "cleaned corpus (JSONL)");
  AddOpt(clean, appliers, "--report", "report", report_path,
         "cleaning report (JSON)");
  AddOpt(clean, appliers, "--blacklist", "blacklist_path", blacklist_path,
         "keyword file, one per line");
  AddOpt(clean, appliers, "--lang-threshold", "language_threshold",
         lang_threshold, "minimum target-language probability (default 0.99)");
  AddOpt(clean, appliers, "--target-language", "target_language",
         target_language, "language tag to keep (default fa)");
  AddOpt(clean, appliers, "--min-words", "min_words_per_sentence", min_words,
         "minimum words per sentence (default 5)");
  AddOpt(clean, appliers, "--min-sentences", "min_sentences", min_sentences,
         "minimum sentences per document (default 3)");
  AddFlagValue(clean, appliers, "--no-lang-filter", "language_filter", false,
               "skip language identification");
  AddOpt(clean, appliers, "--manifest", "manifest", manifest_path,
         "run manifest path (JSON)");
  AddFlagValue(clean, appliers, "--unordered", "ordered", false,
               "emit results as they finish");

  CLI::App* build = app.add_subcommand(
      "build", "turn a cleaned corpus into pre-training pairs");
  AddOpt(build, appliers, "--in", "input", in_path, "input corpus (JSONL)");
  AddOpt(build, appliers, "--out", "output", out_path, "examples (JSONL)");
  AddOpt(build, appliers, "--manifest", "manifest", manifest_path,
         "run manifest path (JSON)");
  AddOpt(build, appliers, "--objective", "objective", objective,
         "tss_rouge|tss_ss|tss_sh|tss_msr (default tss_msr)");
  AddOpt(build, appliers, "--mask-rate", "mask_rate", mask_rate,
         "per-sentence mask probability (default 1.0)");
  AddOpt(build, appliers, "--shuffle-fraction", "shuffle_fraction",
         shuffle_fraction, "tss_sh span-shuffle probability (default 0.2)");
  AddOpt(build, appliers, "--span-fraction", "span_fraction", span_fraction,
         "tss_sh span length as a fraction of tokens (default 0.5)");
  AddOpt(build, appliers, "--msr-fraction", "msr_fraction", msr_fraction,
         "tss_msr reorder-document probability (default 0.1)");
  AddOpt(build, appliers, "--ratio", "ratio", ratio,
         "selection budget as a fraction of sentences (default 0.3)");
  AddOpt(build, appliers, "--mask-token", "mask_token", mask_token,
         "mask literal (default <mask>)");
  AddOpt(build, appliers, "--score", "score", score,
         "rouge1|semantic (default rouge1)");
  AddOpt(build, appliers, "--embeddings", "embeddings", embeddings,
         "word-vector file (required for --score semantic)");
  AddOpt(build, appliers, "--embedding-limit", "embedding_limit",
         embedding_limit, "load at most this many vectors (0 = all)");
  AddFlagValue(build, appliers, "--clean", "clean", true,
               "run the cleaner on each record first");
  AddFlagValue(build, appliers, "--unordered", "ordered", false,
               "emit results as they finish");

  CLI::App* score_cmd =
      app.add_subcommand("score", "dump per-document sentence selection");
  AddOpt(score_cmd, appliers, "--in", "input", in_path, "input corpus (JSONL)");
  AddOpt(score_cmd, appliers, "--out", "output", out_path,
         "selection dump (JSONL)");
  AddOpt(score_cmd, appliers, "--score", "score", score,
         "rouge1|semantic (default rouge1)");
  AddOpt(score_cmd, appliers, "--ratio", "ratio", ratio,
         "selection budget (default 0.3)");
  AddOpt(score_cmd, appliers, "--embeddings", "embeddings", embeddings,
         "word-vector file");
  AddOpt(score_cmd, appliers, "--embedding-limit", "embedding_limit",
         embedding_limit, "load at most this many vectors (0 = all)");
  AddOpt(score_cmd, appliers, "--manifest", "manifest", manifest_path,
         "run manifest path (JSON)");
  AddFlagValue(score_cmd, appliers, "--unordered", "ordered", false,
               "emit results as they finish");

  CLI::App* eval = app.add_subcommand("eval", "score hypotheses against "
                                              "references");
  AddOpt(eval, appliers, "--articles", "articles", articles,
         "articles (JSONL)");
  AddOpt(eval, appliers, "--refs", "refs", refs, "reference summaries (JSONL)");
  AddOpt(eval, appliers, "--hyps", "hyps", hyps, "hypothesis summaries (JSONL)");
  AddOpt(eval, appliers, "--embeddings", "embeddings", embeddings,
         "word-vector file for the embedding score");
  AddOpt(eval, appliers, "--embedding-limit", "embedding_limit",
         embedding_limit, "load at most this many vectors (0 = all)");
  AddOpt(eval, appliers, "--entities", "entities", entities,
         "entity file (JSONL: id, source, reference, hypothesis)");
  AddOpt(eval, appliers, "--out", "output", out_path, "metric report (JSON)");
  AddOpt(eval, appliers, "--manifest", "manifest", manifest_path,
         "run manifest path (JSON)");

  CLI::App* stats = app.add_subcommand("stats", "corpus and pair statistics");
  AddOpt(stats, appliers, "--in", "input", in_path, "corpus (JSONL)");
  AddOpt(stats, appliers, "--pairs", "pairs", pairs,
         "article/summary pairs (JSONL)");
  AddOpt(stats, appliers, "--out", "output", out_path, "statistics (JSON)");

  for (CLI::App* sub : {clean, build, score_cmd, eval, stats}) {
    sub->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  json options = json::object();
  if (!config_path.empty()) {
    std::ifstream config_file(config_path);
    if (!config_file) {
      std::cerr << "error: cannot open config file: " << config_path << '\n';
      return 2;
    }
    try {
      config_file >> options;
    } catch (const json::exception& e) {
      std::cerr << "error: bad config file: " << e.what() << '\n';
      return 1;
    }
    if (!options.is_object()) {
      std::cerr << "error: config file must hold a JSON object\n";
      return 1;
    }
  }
  if (seed_opt->count() > 0) options["seed"] = seed;
  if (workers_opt->count() > 0) options["workers"] = workers;
  for (const Applier& apply : appliers) apply(options);

  const std::string command = app.get_subcommands().front()->get_name();
  char* manifest_json = nullptr;
  const gapsum_status status =
      gapsum_run(command.c_str(), options.dump().c_str(), &manifest_json);
  if (status != GAPSUM_OK) {
    std::cerr << "error: " << gapsum_last_error() << '\n';
    return StatusToExit(status);
  }
  if (manifest_json != nullptr) {
    std::cout << manifest_json << '\n';
    gapsum_string_free(manifest_json);
  }
  return 0;
}
