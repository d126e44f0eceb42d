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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace gapsum::util {

inline constexpr char32_t kReplacementChar = 0xFFFD;

// Decodes the codepoint starting at byte offset `i` and advances `i` past it.
// Malformed sequences yield U+FFFD and advance by one byte.
char32_t DecodeUtf8(std::string_view s, std::size_t& i);

void AppendUtf8(std::string& out, char32_t cp);

std::u32string ToCodepoints(std::string_view s);
std::string FromCodepoints(std::u32string_view cps);
std::string FromCodepoint(char32_t cp);

}  // namespace gapsum::util
