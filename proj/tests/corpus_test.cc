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


#include "termex/corpus.h"

#include <gtest/gtest.h>

#include <sstream>

#include "termex/error.h"

namespace termex {
namespace {

std::string Line(int id, const std::string &form, const std::string &lemma,
                 const std::string &upos) {
  return std::to_string(id) + "\t" + form + "\t" + lemma + "\t" + upos +
         "\t_\t_\t_\t_\t_\t_\n";
}

Corpus Parse(const std::string &text) {
  std::istringstream in(text);
  return ParseConllu(in, "test");
}

TEST(ParseConllu, CountsTokensAcrossSentences) {
  std::string text = "# sent_id = 1\n";
  for (int i = 1; i <= 5; ++i) text += Line(i, "w", "w", "NOUN");
  text += "\n";
  for (int i = 1; i <= 3; ++i) text += Line(i, "v", "v", "ADJ");
  text += "\n";
  Corpus c = Parse(text);
  EXPECT_EQ(c.token_count, 8);
  ASSERT_EQ(c.sentences.size(), 2u);
  EXPECT_EQ(c.sentences[0].tokens[0].upos, UdTag::kNoun);
  EXPECT_EQ(c.sentences[1].tokens[2].upos, UdTag::kAdj);
}

TEST(ParseConllu, UnknownTagNamesLine) {
  std::string text = Line(1, "a", "a", "NOUN") + Line(2, "b", "b", "FOO");
  try {
    Parse(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(ParseConllu, WrongColumnCountIsError) {
  EXPECT_THROW(Parse("1\ta\ta\tNOUN\n"), ParseError);
}

TEST(ParseConllu, EmptyInputIsError) {
  EXPECT_THROW(Parse(""), ParseError);
  EXPECT_THROW(Parse("# only a comment\n\n"), ParseError);
}

TEST(ParseConllu, SkipsRangesAndEmptyNodesLowercasesLemmas) {
  std::string text = "1-2\tdelo\t_\t_\t_\t_\t_\t_\t_\t_\n" +
                     Line(1, "Delo", "Delo", "NOUN") +
                     "1.1\tx\tx\tNOUN\t_\t_\t_\t_\t_\t_\n" +
                     Line(2, "Hitro", "_", "ADV");
  Corpus c = Parse(text);
  ASSERT_EQ(c.token_count, 2);
  EXPECT_EQ(c.sentences[0].tokens[0].lemma, "delo");
  EXPECT_EQ(c.sentences[0].tokens[0].surface, "Delo");
  EXPECT_EQ(c.sentences[0].tokens[1].lemma, "hitro");
}

TEST(ParseConllu, WriteRoundTrips) {
  std::string text = Line(1, "Velika", "velik", "ADJ") +
                     Line(2, "riba", "riba", "NOUN") + "\n" +
                     Line(1, "plava", "plavati", "VERB") + "\n";
  Corpus c = Parse(text);
  std::ostringstream out;
  WriteConllu(c, out);
  Corpus back = Parse(out.str());
  ASSERT_EQ(back.sentences.size(), c.sentences.size());
  for (size_t s = 0; s < c.sentences.size(); ++s) {
    ASSERT_EQ(back.sentences[s].tokens.size(), c.sentences[s].tokens.size());
    for (size_t t = 0; t < c.sentences[s].tokens.size(); ++t) {
      EXPECT_EQ(back.sentences[s].tokens[t].lemma,
                c.sentences[s].tokens[t].lemma);
      EXPECT_EQ(back.sentences[s].tokens[t].upos,
                c.sentences[s].tokens[t].upos);
    }
  }
}

TEST(LoadGoldTerms, DeduplicatesAndSplits) {
  std::istringstream in("živčni končič\nupogibalka\nživčni končič\n");
  GoldTermSet g = LoadGoldTerms(in, "bim");
  EXPECT_EQ(g.size(), 2u);
  EXPECT_TRUE(g.contains({"živčni", "končič"}));
  std::istringstream empty("");
  EXPECT_EQ(LoadGoldTerms(empty, "bim").size(), 0u);
}

TEST(LoadFreqList, HeaderAndImplicitTotal) {
  std::istringstream with_header("#total\t1000\nsila\t10\n");
  FrequencyTable t = LoadFreqList(with_header);
  EXPECT_EQ(t.total, 1000);
  EXPECT_EQ(t.count("sila"), 10);
  EXPECT_EQ(t.counts.size(), 1u);

  std::istringstream no_header("a\t40\nb\t2\n");
  EXPECT_EQ(LoadFreqList(no_header).total, 42);
}

TEST(LoadFreqList, RejectsDuplicatesAndNonpositive) {
  std::istringstream dup("sila\t10\nsila\t3\n");
  EXPECT_THROW(LoadFreqList(dup), DataError);
  std::istringstream zero("sila\t0\n");
  EXPECT_THROW(LoadFreqList(zero), DataError);
  std::istringstream neg("sila\t-4\n");
  EXPECT_THROW(LoadFreqList(neg), DataError);
}

TEST(Analyze, TalliesFirstAndLastTags) {
  std::string text;
  for (int i = 0; i < 3; ++i) {
    text += Line(1, "strojno", "strojen", "ADJ") +
            Line(2, "učenje", "učenje", "NOUN") +
            Line(3, "je", "biti", "AUX") + "\n";
  }
  text += Line(1, "sila", "sila", "NOUN") + "\n";
  Corpus c = Parse(text);
  GoldTermSet gold;
  gold.terms = {{"strojen", "učenje"}, {"sila"}, {"manjka"}};
  StatsReport r = Analyze(c, gold);
  EXPECT_EQ(r.first_pos[Index(UdTag::kAdj)], 3);
  EXPECT_EQ(r.last_pos[Index(UdTag::kNoun)], 3);
  EXPECT_EQ(r.first_pos[Index(UdTag::kNoun)], 1);
  EXPECT_EQ(r.unigram_pos[Index(UdTag::kNoun)], 1);
  EXPECT_EQ(r.pos_in_term[Index(UdTag::kNoun)], 4);
  EXPECT_EQ(r.gold_terms, 3);
  EXPECT_EQ(r.gold_terms_found, 2);
  EXPECT_EQ(r.term_frequency.at(0), 1);
  EXPECT_EQ(r.term_frequency.at(3), 1);
  EXPECT_EQ(r.longest_term(), 2);
  EXPECT_DOUBLE_EQ(r.unigram_noun_share(), 1.0);
  std::map<std::string, std::string> tables = StatsTables(r);
  for (const char *name : {"token_length", "char_length", "term_frequency",
                           "unigram_pos", "first_pos", "last_pos",
                           "pos_in_term", "summary"}) {
    EXPECT_TRUE(tables.count(name)) << name;
  }
}

}  // namespace
}  // namespace termex
