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

#include "cleaning/langid.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <json.hpp>

#include "text/text.hpp"
#include "util/errors.hpp"
#include "util/utf8.hpp"

#include "langid_data.inc"

namespace gapsum::cleaning {

namespace {

constexpr double kAlpha = 0.5;  // add-alpha smoothing

// Three codepoints packed into one key; codepoints fit in 21 bits.
std::uint64_t PackTrigram(char32_t a, char32_t b, char32_t c) {
  return (static_cast<std::uint64_t>(a) << 42) |
         (static_cast<std::uint64_t>(b) << 21) | static_cast<std::uint64_t>(c);
}

std::vector<std::uint64_t> Trigrams(std::string_view text, std::size_t max_cps) {
  std::u32string cps = util::ToCodepoints(text::Normalize(text));
  if (cps.size() > max_cps) cps.resize(max_cps);
  std::vector<std::uint64_t> grams;
  if (cps.size() < 3) return grams;
  grams.reserve(cps.size() - 2);
  for (std::size_t i = 0; i + 2 < cps.size(); ++i) {
    grams.push_back(PackTrigram(cps[i], cps[i + 1], cps[i + 2]));
  }
  return grams;
}

}  // namespace

TrigramLanguageId TrigramLanguageId::FromJson(std::string_view json_text) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("langid samples: ") + e.what());
  }
  if (!parsed.is_object() || parsed.empty()) {
    throw FormatError("langid samples: expected a non-empty object");
  }

  struct Counts {
    std::string language;
    std::unordered_map<std::uint64_t, std::size_t> gram;
    std::size_t total = 0;
  };
  std::vector<Counts> all;
  std::unordered_set<std::uint64_t> vocabulary;

  for (const auto& [lang, samples] : parsed.items()) {
    if (!samples.is_array()) {
      throw FormatError("langid samples: values must be arrays of strings");
    }
    Counts c;
    c.language = lang;
    for (const auto& sample : samples) {
      if (!sample.is_string()) {
        throw FormatError("langid samples: values must be arrays of strings");
      }
      for (const std::uint64_t g :
           Trigrams(sample.get<std::string>(), kMaxCodepoints)) {
        ++c.gram[g];
        ++c.total;
        vocabulary.insert(g);
      }
    }
    if (c.total == 0) {
      throw FormatError("langid samples: language '" + c.language +
                        "' has no trigrams");
    }
    all.push_back(std::move(c));
  }

  // +1 reserves smoothed mass for trigrams unseen in every profile.
  const double denom_vocab = static_cast<double>(vocabulary.size()) + 1.0;

  TrigramLanguageId model;
  for (const Counts& c : all) {
    Profile p;
    p.language = c.language;
    const double denom = static_cast<double>(c.total) + kAlpha * denom_vocab;
    p.log_prob.reserve(c.gram.size());
    for (const auto& [g, n] : c.gram) {
      p.log_prob.emplace(g, std::log((static_cast<double>(n) + kAlpha) / denom));
    }
    p.log_unseen = std::log(kAlpha / denom);
    model.profiles_.push_back(std::move(p));
  }
  // Stable language order regardless of JSON key order.
  std::sort(model.profiles_.begin(), model.profiles_.end(),
            [](const Profile& a, const Profile& b) {
              return a.language < b.language;
            });
  return model;
}

const TrigramLanguageId& TrigramLanguageId::BuiltIn() {
  static const TrigramLanguageId model = FromJson(kLangidSamplesJson);
  return model;
}

std::vector<double> TrigramLanguageId::LogLikelihoods(
    std::string_view text) const {
  std::vector<double> ll(profiles_.size(), 0.0);
  for (const std::uint64_t g : Trigrams(text, kMaxCodepoints)) {
    for (std::size_t i = 0; i < profiles_.size(); ++i) {
      const auto it = profiles_[i].log_prob.find(g);
      ll[i] += it != profiles_[i].log_prob.end() ? it->second
                                                 : profiles_[i].log_unseen;
    }
  }
  // Uniform prior; convert to a posterior via stable softmax.
  const double peak = *std::max_element(ll.begin(), ll.end());
  double total = 0.0;
  for (double& v : ll) {
    v = std::exp(v - peak);
    total += v;
  }
  for (double& v : ll) v /= total;
  return ll;
}

LangScore TrigramLanguageId::Predict(std::string_view text) const {
  const std::vector<double> posterior = LogLikelihoods(text);
  std::size_t best = 0;
  for (std::size_t i = 1; i < posterior.size(); ++i) {
    if (posterior[i] > posterior[best]) best = i;
  }
  return {profiles_[best].language, posterior[best]};
}

double TrigramLanguageId::Probability(std::string_view text,
                                      std::string_view language) const {
  const std::vector<double> posterior = LogLikelihoods(text);
  for (std::size_t i = 0; i < profiles_.size(); ++i) {
    if (profiles_[i].language == language) return posterior[i];
  }
  return 0.0;
}

std::vector<std::string> TrigramLanguageId::Languages() const {
  std::vector<std::string> out;
  out.reserve(profiles_.size());
  for (const Profile& p : profiles_) out.push_back(p.language);
  return out;
}

}  // namespace gapsum::cleaning
