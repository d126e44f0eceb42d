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
// Character-trigram language identification. Profiles are built from small
// per-language text samples shipped with the library; prediction is a
// naive-Bayes posterior over those profiles. Deliberately tiny: it only has
// to separate Persian from English/Arabic web text, not rank 100 languages.

#ifndef GAPSUM_CLEANING_LANGID_HPP_
#define GAPSUM_CLEANING_LANGID_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gapsum::cleaning {

struct LangScore {
  std::string language;
  double probability = 0.0;
};

class TrigramLanguageId {
 public:
  // Builds per-language trigram profiles from a JSON object mapping
  // language tag -> array of sample strings. Samples pass through the same
  // text normalization documents do. Throws FormatError on malformed JSON.
  static TrigramLanguageId FromJson(std::string_view json_text);

  // Profiles from the samples embedded at build time.
  static const TrigramLanguageId& BuiltIn();

  // Posterior over the known languages; returns the argmax language.
  // Only the first kMaxCodepoints codepoints participate.
  LangScore Predict(std::string_view text) const;

  // Posterior probability of one specific language; 0 for unknown tags.
  double Probability(std::string_view text, std::string_view language) const;

  std::vector<std::string> Languages() const;

  static constexpr std::size_t kMaxCodepoints = 4000;

 private:
  struct Profile {
    std::string language;
    std::unordered_map<std::uint64_t, double> log_prob;
    double log_unseen = 0.0;
  };

  std::vector<double> LogLikelihoods(std::string_view text) const;

  std::vector<Profile> profiles_;
};

}  // namespace gapsum::cleaning

#endif  // GAPSUM_CLEANING_LANGID_HPP_
