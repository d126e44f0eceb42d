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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gapsum::embedding {

enum class OovPolicy {
  kSkipToken,   // misses contribute nothing to scores
  kZeroVector,  // misses read as an all-zero vector
};

struct LoadReport {
  std::size_t entries_loaded = 0;
  std::size_t duplicates_skipped = 0;
  std::size_t zero_norm_vectors = 0;
  std::vector<std::string> zero_norm_words;  // first few, for diagnostics
};

// Immutable word -> unit-norm vector map read from a textual word2vec file
// (header "count dim", then "word v1 .. v_dim" per line). Vectors are
// L2-normalized at load so dot products are cosine similarities in [-1, 1].
// Read-only after construction; safe to share across workers.
class EmbeddingTable {
 public:
  // Throws FormatError on malformed headers or rows (with the line number),
  // IoError if the file cannot be opened. limit == 0 means no limit.
  static EmbeddingTable Load(const std::string& path, std::size_t limit = 0,
                             OovPolicy policy = OovPolicy::kSkipToken);
  static EmbeddingTable LoadFromStream(std::istream& in, std::size_t limit,
                                       OovPolicy policy,
                                       const std::string& name);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return words_.size(); }
  OovPolicy oov_policy() const { return policy_; }
  const LoadReport& load_report() const { return report_; }

  // Exact-match lookup after text normalization of the token. A miss yields
  // the zero vector or std::nullopt depending on the OOV policy.
  std::optional<std::span<const double>> Lookup(std::string_view token) const;

  // Lookup that ignores the OOV policy; misses are always std::nullopt.
  std::optional<std::span<const double>> Find(std::string_view token) const;

  const std::vector<std::string>& words() const { return words_; }

 private:
  std::size_t dimension_ = 0;
  OovPolicy policy_ = OovPolicy::kSkipToken;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> words_;
  std::vector<double> data_;  // size() * dimension_, row-major
  std::vector<double> zero_;
  LoadReport report_;
};

}  // namespace gapsum::embedding
