/* Copyright 2026 The gapsum Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the gapsum corpus-processing toolkit.
 *
 * Conventions:
 *   - Every fallible function returns a gapsum_status; GAPSUM_OK is 0.
 *   - On failure, gapsum_last_error() describes the problem for the
 *     calling thread.
 *   - Functions returning strings allocate them; release with
 *     gapsum_string_free(). Structured results are UTF-8 JSON text.
 *   - Token lists are passed as JSON arrays of strings.
 *   - Handles are opaque; a handle may be shared across threads for
 *     read-only use after construction.
 */

#ifndef GAPSUM_GAPSUM_H_
#define GAPSUM_GAPSUM_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gapsum_status {
  GAPSUM_OK = 0,
  GAPSUM_ERR_CONFIG = 1,   /* bad option values or combinations */
  GAPSUM_ERR_IO = 2,       /* unreadable/unwritable files */
  GAPSUM_ERR_FORMAT = 3,   /* malformed data (vec file, JSON, ...) */
  GAPSUM_ERR_ARGUMENT = 4, /* null pointers, out-of-contract arguments */
  GAPSUM_ERR_INTERNAL = 5
} gapsum_status;

/* Library version, static storage. */
const char* gapsum_version(void);

/* Message for the most recent failure on this thread; static storage,
 * overwritten by the next failing call. */
const char* gapsum_last_error(void);

/* Frees any char* produced by this library. NULL is a no-op. */
void gapsum_string_free(char* s);

/* ------------------------------------------------------------- text ---- */

/* Unicode cleanup: Persian character variants unified, zero-width junk
 * stripped, whitespace runs collapsed. */
gapsum_status gapsum_normalize(const char* text, char** out);

/* Normalized sentence texts as a JSON array of strings. */
gapsum_status gapsum_split_sentences(const char* text, char** out_json);

/* Tokens of one normalized text as a JSON array of strings. */
gapsum_status gapsum_tokenize(const char* text, char** out_json);

/* ------------------------------------------------------- embeddings ---- */

typedef struct gapsum_embeddings gapsum_embeddings;

/* Loads a textual word-vector file: a "count dim" header line, then
 * "word v1 v2 ..." rows. Vectors are unit-normalized. limit 0 = no limit. */
gapsum_status gapsum_embeddings_open(const char* path, size_t limit,
                                     gapsum_embeddings** out);
void gapsum_embeddings_close(gapsum_embeddings* table);
size_t gapsum_embeddings_size(const gapsum_embeddings* table);
size_t gapsum_embeddings_dim(const gapsum_embeddings* table);

/* --------------------------------------------------------- metrics ---- */

/* ROUGE-n for n >= 1; n == 0 computes ROUGE-L. Any output pointer may be
 * NULL. Token lists are JSON arrays of strings. */
gapsum_status gapsum_rouge(const char* candidate_json,
                           const char* reference_json, int n, double* precision,
                           double* recall, double* f1);

/* Greedy embedding match score. degenerate is set to 1 when either side
 * has no in-vocabulary token (scores are 0 then). */
gapsum_status gapsum_embed_score(const gapsum_embeddings* table,
                                 const char* candidate_json,
                                 const char* reference_json, double* precision,
                                 double* recall, double* f1, int* degenerate);

/* Extractive fragment statistics of summary against article. */
gapsum_status gapsum_fragment_stats(const char* article_json,
                                    const char* summary_json, double* density,
                                    double* coverage);

/* ------------------------------------------------------- selection ---- */

/* Scores and selects the top sentences of a document.
 * options_json keys (all optional): "score" ("rouge1"|"semantic"),
 * "ratio" (default 0.3). `table` may be NULL for rouge1 scoring.
 * Result JSON: {"m","kind","fallback","scores","selected","sentences"}. */
gapsum_status gapsum_select(const char* doc_text, const char* options_json,
                            const gapsum_embeddings* table, char** out_json);

/* Builds one pre-training example. options_json keys: "objective",
 * "mask_rate", "shuffle_fraction", "span_fraction", "msr_fraction",
 * "ratio", "mask_token", "score", "seed". Result JSON:
 * {"doc_id","objective","branch","input","target","masked_indices"}. */
gapsum_status gapsum_build_example(const char* doc_id, const char* doc_text,
                                   const char* options_json,
                                   const gapsum_embeddings* table,
                                   char** out_json);

/* ------------------------------------------------------------ runs ---- */

/* Runs a whole subcommand: "clean", "build", "score", "eval" or "stats".
 * options_json is the same object the command-line tool builds from its
 * flags; see the tool's --help for the keys. On success *out_manifest_json
 * receives the run manifest. */
gapsum_status gapsum_run(const char* command, const char* options_json,
                         char** out_manifest_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GAPSUM_GAPSUM_H_ */
