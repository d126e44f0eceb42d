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
#include <string_view>
#include <vector>

namespace gapsum::util {

std::uint64_t Fnv1a64(std::string_view bytes);

// splitmix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// Deterministic per-document random stream. The state is derived from
// (global seed, doc id) only, so results do not depend on processing order
// or worker count. std::shuffle and std::uniform_*_distribution are
// implementation-defined across standard libraries; everything here is
// spelled out so the same draws come out on any platform.
class DocRng {
 public:
  DocRng(std::uint64_t global_seed, std::string_view doc_id);

  std::uint64_t NextU64();

  // Uniform double in [0, 1) built from the top 53 bits.
  double NextUnit();

  // Uniform integer in [0, n), n > 0. Rejection sampling, no modulo bias.
  std::uint64_t NextBelow(std::uint64_t n);

  // In-place Fisher-Yates.
  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(NextBelow(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace gapsum::util
