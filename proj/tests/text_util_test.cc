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


#include "termex/text_util.h"

#include <gtest/gtest.h>

#include "termex/ud_tag.h"
#include "termex/error.h"

namespace termex {
namespace {

TEST(Utf8, LengthCountsCodePoints) {
  EXPECT_EQ(Utf8Length("pes"), 3u);
  EXPECT_EQ(Utf8Length("živčni končič"), 13u);
  EXPECT_EQ(Utf8Length(""), 0u);
}

TEST(Utf8, Validity) {
  EXPECT_TRUE(IsValidUtf8("učenje"));
  EXPECT_FALSE(IsValidUtf8("\xC3"));
  EXPECT_FALSE(IsValidUtf8("\xFF\xFE"));
  EXPECT_FALSE(IsValidUtf8("\xC0\x80"));  // overlong
}

TEST(Utf8, LowercasesSlovenianLetters) {
  EXPECT_EQ(ToLowerUtf8("ŽIVČNI Končič"), "živčni končič");
  EXPECT_EQ(ToLowerUtf8("ŠĆĐ"), "šćđ");
  EXPECT_EQ(ToLowerUtf8("ABC123"), "abc123");
}

TEST(Split, KeepsOrDropsEmptyFields) {
  EXPECT_EQ(Split("a\t\tb", '\t'), (std::vector<std::string>{"a", "", "b"}));
  EXPECT_EQ(SplitNonEmpty(" a  b ", ' '),
            (std::vector<std::string>{"a", "b"}));
  std::vector<std::string> parts = {"x", "y", "z"};
  EXPECT_EQ(Join(parts, " "), "x y z");
  EXPECT_EQ(StripCr("line\r"), "line");
}

TEST(UdTag, NamesRoundTripInTableOrder) {
  ASSERT_EQ(kAllUdTags.size(), 17u);
  const char *expected[] = {"ADJ",  "ADP",  "ADV",   "AUX", "CCONJ", "DET",
                            "INTJ", "NOUN", "NUM",   "PART", "PRON", "PROPN",
                            "PUNCT", "SCONJ", "SYM", "VERB", "X"};
  for (size_t i = 0; i < kAllUdTags.size(); ++i) {
    EXPECT_EQ(Index(kAllUdTags[i]), i);
    EXPECT_EQ(UdTagName(kAllUdTags[i]), expected[i]);
    EXPECT_EQ(ParseUdTag(expected[i]), kAllUdTags[i]);
  }
  EXPECT_FALSE(ParseUdTag("FOO").has_value());
  EXPECT_EQ(ParsePosSeq("ADJ NOUN"),
            (PosSeq{UdTag::kAdj, UdTag::kNoun}));
  EXPECT_THROW(ParsePosSeq("ADJ FOO"), DataError);
}

}  // namespace
}  // namespace termex
