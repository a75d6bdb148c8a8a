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

// Universal Dependencies part-of-speech tags.

#ifndef TERMEX_UD_TAG_H_
#define TERMEX_UD_TAG_H_

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace termex {

// The 17 UD tags. The enumerator order is the canonical feature order and
// must not change: feature schemas and fingerprints depend on it.
enum class UdTag : uint8_t {
  kAdj,
  kAdp,
  kAdv,
  kAux,
  kCconj,
  kDet,
  kIntj,
  kNoun,
  kNum,
  kPart,
  kPron,
  kPropn,
  kPunct,
  kSconj,
  kSym,
  kVerb,
  kX,
};

inline constexpr size_t kNumUdTags = 17;

inline constexpr std::array<UdTag, kNumUdTags> kAllUdTags = {
    UdTag::kAdj,  UdTag::kAdp,   UdTag::kAdv,   UdTag::kAux,   UdTag::kCconj,
    UdTag::kDet,  UdTag::kIntj,  UdTag::kNoun,  UdTag::kNum,   UdTag::kPart,
    UdTag::kPron, UdTag::kPropn, UdTag::kPunct, UdTag::kSconj, UdTag::kSym,
    UdTag::kVerb, UdTag::kX,
};

inline constexpr size_t Index(UdTag tag) { return static_cast<size_t>(tag); }

// Upper-case UD name, e.g. "NOUN".
std::string_view UdTagName(UdTag tag);

// Exact, case-sensitive match against the 17 UD names.
std::optional<UdTag> ParseUdTag(std::string_view name);

using PosSeq = std::vector<UdTag>;

// Space-joined tag names, e.g. "ADJ NOUN".
std::string JoinTags(std::span<const UdTag> tags);

// Inverse of JoinTags. Throws DataError on an unknown or empty tag list.
PosSeq ParsePosSeq(std::string_view text);

// A set of UD tags.
class TagSet {
 public:
  TagSet() = default;
  TagSet(std::initializer_list<UdTag> tags) {
    for (UdTag t : tags) bits_.set(Index(t));
  }

  bool contains(UdTag tag) const { return bits_.test(Index(tag)); }
  void insert(UdTag tag) { bits_.set(Index(tag)); }
  void erase(UdTag tag) { bits_.reset(Index(tag)); }
  size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  friend bool operator==(const TagSet &a, const TagSet &b) = default;

 private:
  std::bitset<kNumUdTags> bits_;
};

}  // namespace termex

#endif  // TERMEX_UD_TAG_H_
