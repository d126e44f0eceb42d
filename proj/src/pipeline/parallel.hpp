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
// Line-at-a-time parallel processing: one reader, N stateless workers, one
// writer. In ordered mode the writer re-sequences results so output bytes
// are identical for any worker count.

#ifndef GAPSUM_PIPELINE_PARALLEL_HPP_
#define GAPSUM_PIPELINE_PARALLEL_HPP_

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <string>

namespace gapsum::pipeline {

// Maps one input line to at most one output line. Must be thread-safe;
// per-record failures must be handled inside (return nullopt), exceptions
// abort the whole run.
using LineFn =
    std::function<std::optional<std::string>(std::string&& line,
                                             std::uint64_t index)>;

struct ParallelOptions {
  unsigned workers = 1;
  bool ordered = true;
  // Flow-control window; bounds queued lines and buffered results so peak
  // memory stays independent of corpus size.
  std::size_t window = 256;
};

// Streams `in` through `fn`, appending one '\n' per emitted line. Returns
// the number of input lines read. Throws IoError when the output stream
// fails; propagates the first exception thrown by `fn`.
std::uint64_t ProcessLines(std::istream& in, std::ostream& out,
                           const LineFn& fn, const ParallelOptions& opts);

}  // namespace gapsum::pipeline

#endif  // GAPSUM_PIPELINE_PARALLEL_HPP_
