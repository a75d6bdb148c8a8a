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

#include "termex/ud_tag.h"

#include "termex/error.h"
#include "termex/text_util.h"

namespace termex {
namespace {

constexpr std::array<std::string_view, kNumUdTags> kNames = {
    "ADJ",  "ADP",   "ADV",   "AUX",   "CCONJ", "DET",
    "INTJ", "NOUN",  "NUM",   "PART",  "PRON",  "PROPN",
    "PUNCT", "SCONJ", "SYM",  "VERB",  "X",
};

}  // namespace

std::string_view UdTagName(UdTag tag) { return kNames[Index(tag)]; }

std::optional<UdTag> ParseUdTag(std::string_view name) {
  for (size_t i = 0; i < kNumUdTags; ++i) {
    if (kNames[i] == name) return kAllUdTags[i];
  }
  return std::nullopt;
}

std::string JoinTags(std::span<const UdTag> tags) {
  std::string out;
  for (size_t i = 0; i < tags.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out.append(UdTagName(tags[i]));
  }
  return out;
}

PosSeq ParsePosSeq(std::string_view text) {
  PosSeq seq;
  for (const std::string &name : SplitNonEmpty(text, ' ')) {
    std::optional<UdTag> tag = ParseUdTag(name);
    if (!tag) throw DataError("unknown UPOS tag '" + name + "'");
    seq.push_back(*tag);
  }
  if (seq.empty()) throw DataError("empty POS sequence");
  return seq;
}

}  // namespace termex
