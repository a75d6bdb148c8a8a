// Copyright 2026 The Termex Authors.
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

#ifndef TERMEX_TEXT_UTIL_H_
#define TERMEX_TEXT_UTIL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace termex {

// A lemmatized term or n-gram: one lowercased lemma per token.
using LemmaSeq = std::vector<std::string>;

struct LemmaSeqHash {
  size_t operator()(const LemmaSeq &seq) const {
    size_t h = 0xcbf29ce484222325ULL;
    for (const std::string &s : seq) {
      h ^= std::hash<std::string>()(s) + 0x9e3779b97f4a7c15ULL + (h << 6) +
           (h >> 2);
    }
    return h;
  }
};

bool IsValidUtf8(std::string_view text);

// Number of code points. Assumes valid UTF-8.
size_t Utf8Length(std::string_view text);

// Lowercases ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic letters.
// Other code points pass through unchanged.
std::string ToLowerUtf8(std::string_view text);

// Splits on `sep`, keeping empty fields.
std::vector<std::string> Split(std::string_view text, char sep);

// Splits on `sep`, dropping empty fields.
std::vector<std::string> SplitNonEmpty(std::string_view text, char sep);

std::string Join(std::span<const std::string> parts, std::string_view sep);

// Removes a trailing '\r' left by CRLF line endings.
std::string_view StripCr(std::string_view line);

inline constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ULL;

// 64-bit FNV-1a, continuing from `h`.
inline uint64_t Fnv1a(std::string_view bytes, uint64_t h = kFnvOffset) {
  for (char c : bytes) {
    h ^= static_cast<uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace termex

#endif  // TERMEX_TEXT_UTIL_H_
