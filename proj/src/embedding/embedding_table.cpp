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

#include "embedding/embedding_table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "text/text.hpp"
#include "util/errors.hpp"

namespace gapsum::embedding {

namespace {

constexpr std::size_t kMaxReportedZeroNormWords = 16;

bool ParseSizeT(std::string_view field, std::size_t& out) {
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc{} && ptr == field.data() + field.size();
}

bool ParseDouble(std::string_view field, double& out) {
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc{} && ptr == field.data() + field.size();
}

// Splits on single spaces/tabs, skipping empty fields (some .vec files have
// a trailing space per row).
std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r'))
      ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r')
      ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

}  // namespace

EmbeddingTable EmbeddingTable::Load(const std::string& path, std::size_t limit,
                                    OovPolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embeddings file: " + path);
  return LoadFromStream(in, limit, policy, path);
}

EmbeddingTable EmbeddingTable::LoadFromStream(std::istream& in,
                                              std::size_t limit,
                                              OovPolicy policy,
                                              const std::string& name) {
  EmbeddingTable table;
  table.policy_ = policy;

  std::string line;
  if (!std::getline(in, line)) {
    throw FormatError(name + ": empty embeddings file");
  }
  const auto header = SplitFields(line);
  std::size_t declared_count = 0;
  std::size_t dim = 0;
  if (header.size() != 2 || !ParseSizeT(header[0], declared_count) ||
      !ParseSizeT(header[1], dim) || dim == 0) {
    throw FormatError(name + " line 1: expected header \"count dim\"");
  }
  table.dimension_ = dim;
  table.zero_.assign(dim, 0.0);

  const std::size_t want =
      limit == 0 ? declared_count : std::min(declared_count, limit);
  table.index_.reserve(want);
  table.data_.reserve(want * dim);

  std::size_t line_no = 1;
  std::vector<double> row(dim);
  while (table.words_.size() < want && std::getline(in, line)) {
    ++line_no;
    const auto fields = SplitFields(line);
    if (fields.empty()) continue;
    if (fields.size() != dim + 1) {
      std::ostringstream msg;
      msg << name << " line " << line_no << ": expected " << dim
          << " vector values, got " << fields.size() - 1;
      throw FormatError(msg.str());
    }
    for (std::size_t k = 0; k < dim; ++k) {
      if (!ParseDouble(fields[k + 1], row[k])) {
        std::ostringstream msg;
        msg << name << " line " << line_no << ": bad number \"" << fields[k + 1]
            << "\"";
        throw FormatError(msg.str());
      }
    }

    // Keys are normalized the same way lookups are, first occurrence wins.
    std::string word = text::Normalize(fields[0]);
    if (word.empty()) word = std::string(fields[0]);
    if (table.index_.count(word)) {
      ++table.report_.duplicates_skipped;
      continue;
    }

    double norm_sq = 0.0;
    for (double v : row) norm_sq += v * v;
    if (norm_sq > 0.0) {
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (double& v : row) v *= inv;
    } else {
      ++table.report_.zero_norm_vectors;
      if (table.report_.zero_norm_words.size() < kMaxReportedZeroNormWords) {
        table.report_.zero_norm_words.push_back(word);
      }
    }

    table.index_.emplace(std::move(word), table.words_.size());
    table.words_.push_back(std::string(fields[0]));
    table.data_.insert(table.data_.end(), row.begin(), row.end());
  }
  table.report_.entries_loaded = table.words_.size();
  return table;
}

std::optional<std::span<const double>> EmbeddingTable::Find(
    std::string_view token) const {
  const std::string key = text::Normalize(token);
  const auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return std::span<const double>(data_.data() + it->second * dimension_,
                                 dimension_);
}

std::optional<std::span<const double>> EmbeddingTable::Lookup(
    std::string_view token) const {
  auto hit = Find(token);
  if (hit) return hit;
  if (policy_ == OovPolicy::kZeroVector) {
    return std::span<const double>(zero_.data(), zero_.size());
  }
  return std::nullopt;
}

}  // namespace gapsum::embedding
