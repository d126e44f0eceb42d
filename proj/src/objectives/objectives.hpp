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
// Pre-training pair builders. Each builder turns a (document, selection)
// split into one input/target example:
//
//   tss_rouge  every selected sentence replaced by its own mask token
//   tss_ss     selected sentences masked with probability mask_rate, kept
//              in place otherwise; consecutive masks coalesce into one
//   tss_sh     like tss_ss at full mask rate, except a shuffle_fraction of
//              selected sentences get a token span shuffled instead
//   tss_msr    a msr_reorder_doc_fraction of documents are emitted with all
//              sentences permuted (no masks); the rest take the tss_ss path
//
// All randomness is drawn from a per-document stream seeded by
// (cfg.seed, doc.id), so output is independent of processing order.

#ifndef GAPSUM_OBJECTIVES_OBJECTIVES_HPP_
#define GAPSUM_OBJECTIVES_OBJECTIVES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "selection/selection.hpp"
#include "text/text.hpp"
#include "util/rng.hpp"

namespace gapsum::objectives {

enum class Objective { kTssRouge, kTssSs, kTssSh, kTssMsr };

// Which path produced the example. For tss_ss it is kKeep when at least one
// selected sentence stayed in place; for tss_sh it is kSpanShuffle when at
// least one span was shuffled; tss_msr distinguishes its two document-level
// paths as kMask / kReorder.
enum class Branch { kMask, kKeep, kSpanShuffle, kReorder };

struct ObjectiveConfig {
  Objective objective = Objective::kTssMsr;
  double mask_rate = 1.0;          // tss_ss: 0.8 for SS-80, 1.0 for SS-100
  double shuffle_fraction = 0.2;   // tss_sh: per-sentence shuffle probability
  double span_fraction = 0.5;      // tss_sh: span length as fraction of tokens
  double msr_reorder_doc_fraction = 0.1;
  double selection_ratio = 0.3;
  std::uint64_t seed = 0;
  std::string mask_token = "<mask>";

  // Throws gapsum::ConfigError on out-of-range fields.
  void Validate() const;
};

struct PretrainExample {
  std::string doc_id;
  std::string input_text;
  std::string target_text;
  Objective objective = Objective::kTssRouge;
  Branch branch = Branch::kMask;
  // Document indices of the sentences that were replaced by a mask token,
  // listed individually even when a run coalesces into one token.
  std::vector<std::size_t> masked_indices;
};

const char* ObjectiveName(Objective o);
const char* BranchName(Branch b);
// Throws gapsum::ConfigError on unknown names.
Objective ObjectiveFromName(std::string_view name);

PretrainExample BuildTssRouge(const text::Document& doc,
                              const selection::SelectionResult& sel,
                              const ObjectiveConfig& cfg);

PretrainExample BuildTssSs(const text::Document& doc,
                           const selection::SelectionResult& sel,
                           const ObjectiveConfig& cfg, util::DocRng& rng);

PretrainExample BuildTssSh(const text::Document& doc,
                           const selection::SelectionResult& sel,
                           const ObjectiveConfig& cfg, util::DocRng& rng);

PretrainExample BuildTssMsr(const text::Document& doc,
                            const selection::SelectionResult& sel,
                            const ObjectiveConfig& cfg, util::DocRng& rng);

// Seeds a fresh per-document stream from (cfg.seed, doc.id) and dispatches
// on cfg.objective.
PretrainExample BuildExample(const text::Document& doc,
                             const selection::SelectionResult& sel,
                             const ObjectiveConfig& cfg);

}  // namespace gapsum::objectives

#endif  // GAPSUM_OBJECTIVES_OBJECTIVES_HPP_
