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

#include "text/text.hpp"

#include <algorithm>
#include <unordered_set>

#include "util/utf8.hpp"

namespace gapsum::text {

namespace {

using util::FromCodepoints;
using util::ToCodepoints;

char32_t MapVariant(char32_t cp) {
  switch (cp) {
    case 0x064A:  // ARABIC LETTER YEH
    case 0x0649:  // ARABIC LETTER ALEF MAKSURA
      return 0x06CC;  // ARABIC LETTER FARSI YEH
    case 0x0643:  // ARABIC LETTER KAF
      return 0x06A9;  // ARABIC LETTER KEHEH
    default:
      break;
  }
  // Arabic-Indic digits -> Extended Arabic-Indic (Persian) digits.
  if (cp >= 0x0660 && cp <= 0x0669) return 0x06F0 + (cp - 0x0660);
  return cp;
}

bool IsDroppedCp(char32_t cp) {
  // Zero-width space, BOM/zero-width no-break space, soft hyphen.
  return cp == 0x200B || cp == 0xFEFF || cp == 0x00AD;
}

bool IsLatinUpper(char32_t cp) {
  return (cp >= U'A' && cp <= U'Z') ||
         (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7);
}

char32_t LatinLower(char32_t cp) {
  return IsLatinUpper(cp) ? cp + 0x20 : cp;
}

bool IsDigitCp(char32_t cp) {
  return (cp >= U'0' && cp <= U'9') || (cp >= 0x06F0 && cp <= 0x06F9) ||
         (cp >= 0x0660 && cp <= 0x0669);
}

std::u32string LowerLatin(std::u32string_view s) {
  std::u32string out(s);
  for (char32_t& cp : out) cp = LatinLower(cp);
  return out;
}

bool IsClosingCp(char32_t cp) {
  switch (cp) {
    case U')':
    case U']':
    case U'}':
    case U'"':
    case U'\'':
    case 0x00BB:  // »
    case 0x2019:  // ’
    case 0x201D:  // ”
    case 0x203A:  // ›
      return true;
    default:
      return false;
  }
}

struct SegmenterConfig {
  std::vector<std::u32string> terminators;  // longest first
  std::unordered_set<char32_t> terminator_cps;
  std::unordered_set<std::u32string> abbreviations;  // Latin-lowercased
};

SegmenterConfig CompileConfig(const TextConfig& config) {
  SegmenterConfig out;
  for (const std::string& t : config.sentence_terminators) {
    std::u32string cps = ToCodepoints(t);
    if (cps.empty()) continue;
    out.terminators.push_back(cps);
    if (cps.size() == 1) out.terminator_cps.insert(cps[0]);
  }
  std::sort(out.terminators.begin(), out.terminators.end(),
            [](const std::u32string& a, const std::u32string& b) {
              return a.size() > b.size();
            });
  for (const std::string& a : config.abbreviations) {
    out.abbreviations.insert(LowerLatin(ToCodepoints(a)));
  }
  return out;
}

}  // namespace

TextConfig TextConfig::Defaults() {
  TextConfig cfg;
  cfg.sentence_terminators = {".", "!", "?", "؟", "…"};
  cfg.abbreviations = {"etc.",  "e.g.", "i.e.", "mr.",  "mrs.", "dr.",
                       "prof.", "vs.",  "no.",  "fig.", "al.",  "ص."};
  return cfg;
}

bool IsSpaceCp(char32_t cp) {
  switch (cp) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\r':
    case U'\f':
    case U'\v':
    case 0x0085:  // NEL
    case 0x00A0:  // NBSP
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool IsPunctCp(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= U'!' && cp <= U'/') || (cp >= U':' && cp <= U'@') ||
           (cp >= U'[' && cp <= U'`') || (cp >= U'{' && cp <= U'~');
  }
  switch (cp) {
    case 0x00A1:  // ¡
    case 0x00AB:  // «
    case 0x00B7:  // ·
    case 0x00BB:  // »
    case 0x00BF:  // ¿
    case 0x060C:  // ، Arabic comma
    case 0x061B:  // ؛ Arabic semicolon
    case 0x061F:  // ؟ Arabic question mark
    case 0x066A:  // ٪
    case 0x066B:
    case 0x066C:
    case 0x06D4:  // ۔
    case 0x2018:
    case 0x2019:
    case 0x201C:
    case 0x201D:
    case 0x2020:
    case 0x2021:
    case 0x2022:
    case 0x2026:  // …
    case 0x2039:
    case 0x203A:
      return true;
    default:
      return cp >= 0x2010 && cp <= 0x2015;  // hyphens and dashes
  }
}

std::string Normalize(std::string_view input) {
  std::u32string cps = ToCodepoints(input);
  std::u32string out;
  out.reserve(cps.size());
  bool pending_space = false;
  for (char32_t raw : cps) {
    const char32_t cp = MapVariant(raw);
    if (IsDroppedCp(cp)) continue;
    if (IsSpaceCp(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(U' ');
      pending_space = false;
    }
    out.push_back(cp);
  }
  return FromCodepoints(out);
}

std::vector<Sentence> SplitSentences(std::string_view normalized_text,
                                     const TextConfig& config) {
  const SegmenterConfig seg = CompileConfig(config);
  const std::u32string cps = ToCodepoints(normalized_text);
  std::vector<Sentence> sentences;

  auto emit = [&](std::size_t begin, std::size_t end) {
    while (begin < end && IsSpaceCp(cps[begin])) ++begin;
    while (end > begin && IsSpaceCp(cps[end - 1])) --end;
    if (begin >= end) return;
    Sentence s;
    s.index = sentences.size();
    s.text = FromCodepoints(
        std::u32string_view(cps.data() + begin, end - begin));
    s.tokens = Tokenize(s.text);
    if (s.tokens.empty()) return;
    sentences.push_back(std::move(s));
  };

  // Matches the longest configured terminator at position i, or 0.
  auto match_terminator = [&](std::size_t i) -> std::size_t {
    for (const std::u32string& t : seg.terminators) {
      if (i + t.size() <= cps.size() &&
          std::equal(t.begin(), t.end(), cps.begin() + i)) {
        return t.size();
      }
    }
    return 0;
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < cps.size()) {
    const std::size_t tlen = match_terminator(i);
    if (tlen == 0) {
      ++i;
      continue;
    }
    std::size_t j = i + tlen;
    // "3.14": a period between digits is a decimal point, not an end mark.
    if (tlen == 1 && cps[i] == U'.' && i > 0 && IsDigitCp(cps[i - 1]) &&
        j < cps.size() && IsDigitCp(cps[j])) {
      i = j;
      continue;
    }
    // Abbreviation guard: the word ending at this period is protected.
    if (cps[j - 1] == U'.' && !seg.abbreviations.empty()) {
      std::size_t w = i;
      while (w > start && !IsSpaceCp(cps[w - 1])) --w;
      const std::u32string word =
          LowerLatin(std::u32string_view(cps.data() + w, j - w));
      if (seg.abbreviations.count(word)) {
        i = j;
        continue;
      }
    }
    // Absorb a run of further terminator marks ("?!", "...") and any
    // closing quotes or brackets that belong to this sentence.
    while (j < cps.size() && seg.terminator_cps.count(cps[j])) ++j;
    while (j < cps.size() && IsClosingCp(cps[j])) ++j;
    // Only cut at a real boundary: end of text or following whitespace.
    if (j < cps.size() && !IsSpaceCp(cps[j])) {
      i = j;
      continue;
    }
    emit(start, j);
    start = j;
    i = j;
  }
  emit(start, cps.size());

  // No terminator at all in non-empty text: the whole text is one sentence.
  // (emit already handled that; nothing extra to do.)
  return sentences;
}

std::vector<std::string> Tokenize(std::string_view normalized_text) {
  const std::u32string cps = ToCodepoints(normalized_text);
  std::vector<std::string> tokens;

  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && IsSpaceCp(cps[i])) ++i;
    std::size_t end = i;
    while (end < cps.size() && !IsSpaceCp(cps[end])) ++end;
    if (i == end) break;

    std::size_t lo = i;
    std::size_t hi = end;
    while (lo < hi && IsPunctCp(cps[lo])) {
      tokens.push_back(util::FromCodepoint(cps[lo]));
      ++lo;
    }
    std::vector<std::string> trailing;
    while (hi > lo && IsPunctCp(cps[hi - 1])) {
      trailing.push_back(util::FromCodepoint(cps[hi - 1]));
      --hi;
    }
    if (lo < hi) {
      std::u32string word(cps.begin() + lo, cps.begin() + hi);
      for (char32_t& cp : word) cp = LatinLower(cp);
      tokens.push_back(FromCodepoints(word));
    }
    tokens.insert(tokens.end(), trailing.rbegin(), trailing.rend());
    i = end;
  }
  return tokens;
}

std::size_t CountWords(const std::vector<std::string>& tokens) {
  std::size_t words = 0;
  for (const std::string& tok : tokens) {
    const std::u32string cps = ToCodepoints(tok);
    const bool all_punct =
        std::all_of(cps.begin(), cps.end(), [](char32_t c) { return IsPunctCp(c); });
    if (!all_punct) ++words;
  }
  return words;
}

std::string JoinWithSpace(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += parts[i];
  }
  return out;
}

Document Document::Make(std::string id, std::string_view text,
                        const TextConfig& config) {
  Document doc;
  doc.id = std::move(id);
  doc.raw_text = Normalize(text);
  doc.sentences = SplitSentences(doc.raw_text, config);
  return doc;
}

std::vector<std::string> Document::AllTokens() const {
  std::vector<std::string> out;
  for (const Sentence& s : sentences) {
    out.insert(out.end(), s.tokens.begin(), s.tokens.end());
  }
  return out;
}

}  // namespace gapsum::text
