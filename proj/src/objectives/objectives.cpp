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

#include "objectives/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "util/errors.hpp"

namespace gapsum::objectives {

namespace {

void RequireFraction(double v, const char* name, bool allow_zero) {
  const bool low_ok = allow_zero ? v >= 0.0 : v > 0.0;
  if (!low_ok || v > 1.0) {
    throw ConfigError(std::string("ObjectiveConfig: ") + name +
                      " out of range");
  }
}

void ValidateSelection(const text::Document& doc,
                       const selection::SelectionResult& sel) {
  if (sel.selected.empty()) {
    throw std::invalid_argument("objectives: empty selection");
  }
  std::size_t prev = 0;
  bool first = true;
  for (const std::size_t i : sel.selected) {
    if (i >= doc.sentences.size() || (!first && i <= prev)) {
      throw std::invalid_argument("objectives: invalid selection indices");
    }
    prev = i;
    first = false;
  }
  if (sel.selected.size() >= doc.sentences.size()) {
    throw std::invalid_argument("objectives: selection covers whole document");
  }
}

std::string TargetText(const text::Document& doc,
                       const selection::SelectionResult& sel) {
  std::vector<std::string> parts;
  parts.reserve(sel.selected.size());
  for (const std::size_t i : sel.selected) {
    parts.push_back(doc.sentences[i].text);
  }
  return text::JoinWithSpace(parts);
}

// One input piece per sentence: either the sentence text (possibly
// shuffled) or a mask.
struct Piece {
  bool masked = false;
  std::string text;
};

std::string AssembleInput(const std::vector<Piece>& pieces,
                          const std::string& mask_token, bool coalesce) {
  std::vector<std::string> parts;
  parts.reserve(pieces.size());
  bool prev_masked = false;
  for (const Piece& p : pieces) {
    if (p.masked) {
      if (!coalesce || !prev_masked) parts.push_back(mask_token);
      prev_masked = true;
    } else {
      parts.push_back(p.text);
      prev_masked = false;
    }
  }
  return text::JoinWithSpace(parts);
}

}  // namespace

void ObjectiveConfig::Validate() const {
  RequireFraction(mask_rate, "mask_rate", /*allow_zero=*/false);
  RequireFraction(shuffle_fraction, "shuffle_fraction", /*allow_zero=*/true);
  RequireFraction(span_fraction, "span_fraction", /*allow_zero=*/false);
  RequireFraction(msr_reorder_doc_fraction, "msr_reorder_doc_fraction",
                  /*allow_zero=*/true);
  RequireFraction(selection_ratio, "selection_ratio", /*allow_zero=*/false);
  if (mask_token.empty()) {
    throw ConfigError("ObjectiveConfig: mask_token must be non-empty");
  }
}

const char* ObjectiveName(Objective o) {
  switch (o) {
    case Objective::kTssRouge: return "tss_rouge";
    case Objective::kTssSs: return "tss_ss";
    case Objective::kTssSh: return "tss_sh";
    case Objective::kTssMsr: return "tss_msr";
  }
  return "unknown";
}

const char* BranchName(Branch b) {
  switch (b) {
    case Branch::kMask: return "mask";
    case Branch::kKeep: return "keep";
    case Branch::kSpanShuffle: return "span_shuffle";
    case Branch::kReorder: return "reorder";
  }
  return "unknown";
}

Objective ObjectiveFromName(std::string_view name) {
  if (name == "tss_rouge") return Objective::kTssRouge;
  if (name == "tss_ss") return Objective::kTssSs;
  if (name == "tss_sh") return Objective::kTssSh;
  if (name == "tss_msr") return Objective::kTssMsr;
  throw ConfigError("unknown objective: " + std::string(name));
}

PretrainExample BuildTssRouge(const text::Document& doc,
                              const selection::SelectionResult& sel,
                              const ObjectiveConfig& cfg) {
  ValidateSelection(doc, sel);
  PretrainExample ex;
  ex.doc_id = doc.id;
  ex.objective = Objective::kTssRouge;
  ex.branch = Branch::kMask;
  ex.masked_indices = sel.selected;

  std::vector<Piece> pieces(doc.sentences.size());
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    pieces[i].text = doc.sentences[i].text;
  }
  for (const std::size_t i : sel.selected) pieces[i].masked = true;

  // One mask per selected sentence, runs stay uncoalesced.
  ex.input_text = AssembleInput(pieces, cfg.mask_token, /*coalesce=*/false);
  ex.target_text = TargetText(doc, sel);
  return ex;
}

PretrainExample BuildTssSs(const text::Document& doc,
                           const selection::SelectionResult& sel,
                           const ObjectiveConfig& cfg, util::DocRng& rng) {
  ValidateSelection(doc, sel);
  PretrainExample ex;
  ex.doc_id = doc.id;
  ex.objective = Objective::kTssSs;

  std::vector<Piece> pieces(doc.sentences.size());
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    pieces[i].text = doc.sentences[i].text;
  }
  bool any_kept = false;
  for (const std::size_t i : sel.selected) {
    if (rng.NextUnit() < cfg.mask_rate) {
      pieces[i].masked = true;
      ex.masked_indices.push_back(i);
    } else {
      any_kept = true;  // kept in place verbatim, still part of the target
    }
  }
  ex.branch = any_kept ? Branch::kKeep : Branch::kMask;
  ex.input_text = AssembleInput(pieces, cfg.mask_token, /*coalesce=*/true);
  ex.target_text = TargetText(doc, sel);
  return ex;
}

PretrainExample BuildTssSh(const text::Document& doc,
                           const selection::SelectionResult& sel,
                           const ObjectiveConfig& cfg, util::DocRng& rng) {
  ValidateSelection(doc, sel);
  PretrainExample ex;
  ex.doc_id = doc.id;
  ex.objective = Objective::kTssSh;

  std::vector<Piece> pieces(doc.sentences.size());
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    pieces[i].text = doc.sentences[i].text;
  }
  bool any_shuffled = false;
  for (const std::size_t i : sel.selected) {
    const bool shuffle = rng.NextUnit() < cfg.shuffle_fraction;
    const std::vector<std::string>& tokens = doc.sentences[i].tokens;
    // A span of >= 2 tokens cannot permute non-trivially inside fewer than
    // three tokens; such sentences fall back to masking before any span
    // draw is consumed.
    if (!shuffle || tokens.size() < 3) {
      pieces[i].masked = true;
      ex.masked_indices.push_back(i);
      continue;
    }
    any_shuffled = true;
    std::size_t span = static_cast<std::size_t>(std::floor(
        static_cast<double>(tokens.size()) * cfg.span_fraction));
    span = std::max<std::size_t>(2, span);
    span = std::min(span, tokens.size());
    const std::size_t start = static_cast<std::size_t>(
        rng.NextBelow(tokens.size() - span + 1));

    std::vector<std::string> shuffled = tokens;
    std::vector<std::string> window(shuffled.begin() + start,
                                    shuffled.begin() + start + span);
    rng.Shuffle(window);
    std::copy(window.begin(), window.end(), shuffled.begin() + start);
    pieces[i].text = text::JoinWithSpace(shuffled);
  }
  ex.branch = any_shuffled ? Branch::kSpanShuffle : Branch::kMask;
  ex.input_text = AssembleInput(pieces, cfg.mask_token, /*coalesce=*/true);
  ex.target_text = TargetText(doc, sel);  // unshuffled originals
  return ex;
}

PretrainExample BuildTssMsr(const text::Document& doc,
                            const selection::SelectionResult& sel,
                            const ObjectiveConfig& cfg, util::DocRng& rng) {
  ValidateSelection(doc, sel);
  // The document-level draw comes first so the masking path consumes the
  // same per-sentence stream positions on every document.
  const bool reorder = rng.NextUnit() < cfg.msr_reorder_doc_fraction;
  if (!reorder) {
    PretrainExample ex = BuildTssSs(doc, sel, cfg, rng);
    ex.objective = Objective::kTssMsr;
    return ex;
  }

  PretrainExample ex;
  ex.doc_id = doc.id;
  ex.objective = Objective::kTssMsr;
  ex.branch = Branch::kReorder;

  std::vector<std::size_t> perm(doc.sentences.size());
  std::iota(perm.begin(), perm.end(), 0);
  rng.Shuffle(perm);
  std::vector<std::string> parts;
  parts.reserve(perm.size());
  for (const std::size_t i : perm) parts.push_back(doc.sentences[i].text);
  ex.input_text = text::JoinWithSpace(parts);
  ex.target_text = TargetText(doc, sel);  // original document order
  return ex;
}

PretrainExample BuildExample(const text::Document& doc,
                             const selection::SelectionResult& sel,
                             const ObjectiveConfig& cfg) {
  cfg.Validate();
  util::DocRng rng(cfg.seed, doc.id);
  switch (cfg.objective) {
    case Objective::kTssRouge:
      return BuildTssRouge(doc, sel, cfg);
    case Objective::kTssSs:
      return BuildTssSs(doc, sel, cfg, rng);
    case Objective::kTssSh:
      return BuildTssSh(doc, sel, cfg, rng);
    case Objective::kTssMsr:
      return BuildTssMsr(doc, sel, cfg, rng);
  }
  throw std::invalid_argument("objectives: unknown objective enum");
}

}  // namespace gapsum::objectives
