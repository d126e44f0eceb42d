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

#include <cmath>
#include <sstream>
#include <string>

#include <doctest.h>

#include "embedding/embedding_table.hpp"
#include "util/errors.hpp"

namespace {

using gapsum::FormatError;
using gapsum::IoError;
using gapsum::embedding::EmbeddingTable;
using gapsum::embedding::OovPolicy;

EmbeddingTable FromText(const std::string& text, std::size_t limit = 0,
                        OovPolicy policy = OovPolicy::kSkipToken) {
  std::istringstream in(text);
  return EmbeddingTable::LoadFromStream(in, limit, policy, "test.vec");
}

TEST_CASE("load parses header and normalizes vectors") {
  const EmbeddingTable table = FromText("2 2\na 1 0\nb 0 2\n");
  CHECK(table.size() == 2);
  CHECK(table.dimension() == 2);
  const auto a = table.Find("a");
  REQUIRE(a.has_value());
  CHECK((*a)[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((*a)[1] == doctest::Approx(0.0).epsilon(1e-12));
  // (0, 2) normalizes to the unit vector (0, 1).
  const auto b = table.Find("b");
  REQUIRE(b.has_value());
  CHECK((*b)[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK((*b)[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("limit truncates the table") {
  const EmbeddingTable table = FromText("2 2\na 1 0\nb 0 2\n", 1);
  CHECK(table.size() == 1);
  CHECK(table.Find("a").has_value());
  CHECK_FALSE(table.Find("b").has_value());
}

TEST_CASE("wrong vector length names the line") {
  CHECK_THROWS_WITH_AS(FromText("1 3\na 1 1\n"),
                       doctest::Contains("line 2"), FormatError);
}

TEST_CASE("bad header is a format error") {
  CHECK_THROWS_AS(FromText("not a header\na 1 0\n"), FormatError);
  CHECK_THROWS_AS(FromText(""), FormatError);
  CHECK_THROWS_AS(FromText("2 0\n"), FormatError);
}

TEST_CASE("bad number names the line") {
  CHECK_THROWS_WITH_AS(FromText("2 2\na 1 0\nb x 2\n"),
                       doctest::Contains("line 3"), FormatError);
}

TEST_CASE("duplicate words keep the first vector") {
  const EmbeddingTable table = FromText("3 2\na 1 0\na 0 1\nb 0 2\n");
  CHECK(table.size() == 2);
  CHECK(table.load_report().duplicates_skipped == 1);
  const auto a = table.Find("a");
  REQUIRE(a.has_value());
  CHECK((*a)[0] == doctest::Approx(1.0));
}

TEST_CASE("zero-norm vectors are kept as zero and flagged") {
  const EmbeddingTable table = FromText("2 2\na 0 0\nb 1 0\n");
  CHECK(table.load_report().zero_norm_vectors == 1);
  REQUIRE(table.load_report().zero_norm_words.size() == 1);
  CHECK(table.load_report().zero_norm_words[0] == "a");
  const auto a = table.Find("a");
  REQUIRE(a.has_value());
  CHECK((*a)[0] == 0.0);
  CHECK((*a)[1] == 0.0);
}

TEST_CASE("all loaded vectors are unit norm or zero") {
  const EmbeddingTable table =
      FromText("4 3\nw1 3 4 0\nw2 -1 2 2\nw3 0 0 0\nw4 0.1 0.1 0.1\n");
  for (const std::string& w : {"w1", "w2", "w4"}) {
    const auto vec = table.Find(w);
    REQUIRE(vec.has_value());
    double norm_sq = 0.0;
    for (double v : *vec) norm_sq += v * v;
    CHECK(norm_sq == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("lookup honours the oov policy") {
  const EmbeddingTable skip = FromText("1 2\na 1 0\n", 0, OovPolicy::kSkipToken);
  CHECK_FALSE(skip.Lookup("zzz").has_value());
  CHECK(skip.Lookup("a").has_value());

  const EmbeddingTable zero =
      FromText("1 2\na 1 0\n", 0, OovPolicy::kZeroVector);
  const auto miss = zero.Lookup("zzz");
  REQUIRE(miss.has_value());
  CHECK((*miss)[0] == 0.0);
  CHECK((*miss)[1] == 0.0);
}

TEST_CASE("lookups normalize the token the way the corpus is normalized") {
  // Arabic Yeh in the file, Persian Yeh in the query: same key.
  const EmbeddingTable table = FromText("1 2\nي 1 0\n");
  CHECK(table.Find("ی").has_value());
}

TEST_CASE("missing file is an io error") {
  CHECK_THROWS_AS(EmbeddingTable::Load("/nonexistent/path/w.vec"), IoError);
}

TEST_CASE("loading twice gives an identical table") {
  const std::string text = "3 2\na 1 0\nb 0 2\nc 3 4\n";
  const EmbeddingTable t1 = FromText(text);
  const EmbeddingTable t2 = FromText(text);
  REQUIRE(t1.size() == t2.size());
  for (const std::string& w : t1.words()) {
    const auto v1 = t1.Find(w);
    const auto v2 = t2.Find(w);
    REQUIRE(v1.has_value());
    REQUIRE(v2.has_value());
    for (std::size_t k = 0; k < t1.dimension(); ++k) {
      CHECK((*v1)[k] == (*v2)[k]);
    }
  }
}

}  // namespace
