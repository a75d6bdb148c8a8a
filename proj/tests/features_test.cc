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


#include "termex/features.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "termex/error.h"
#include "tests/oracles.h"

namespace termex {
namespace {

TEST(LinguisticFeatures, AdjNounNounExample) {
  PosSeq pos = ParsePosSeq("ADJ NOUN NOUN");
  LinguisticVector v = LinguisticFeatures(pos);
  const size_t adj = Index(UdTag::kAdj), noun = Index(UdTag::kNoun);
  for (size_t t = 0; t < kNumUdTags; ++t) {
    EXPECT_EQ(v[FeatureSchema::kStartUd + t], t == adj ? 1 : 0);
    EXPECT_EQ(v[FeatureSchema::kEndUd + t], t == noun ? 1 : 0);
    // Interior position only holds NOUN.
    EXPECT_EQ(v[FeatureSchema::kAnywhereUd + t], t == noun ? 1 : 0);
    EXPECT_EQ(v[FeatureSchema::kCountOfUd + t],
              t == adj ? 1 : (t == noun ? 2 : 0));
  }
  EXPECT_EQ(v[FeatureSchema::kNoUniquePos], 2);
}

TEST(LinguisticFeatures, UnigramAndBigram) {
  LinguisticVector u = LinguisticFeatures(ParsePosSeq("NOUN"));
  for (size_t t = 0; t < kNumUdTags; ++t) {
    EXPECT_EQ(u[FeatureSchema::kStartUd + t], u[FeatureSchema::kEndUd + t]);
    EXPECT_EQ(u[FeatureSchema::kAnywhereUd + t], 0);
  }
  EXPECT_EQ(u[FeatureSchema::kCountOfUd + Index(UdTag::kNoun)], 1);
  EXPECT_EQ(u[FeatureSchema::kNoUniquePos], 1);
  LinguisticVector b = LinguisticFeatures(ParsePosSeq("ADJ NOUN"));
  for (size_t t = 0; t < kNumUdTags; ++t) {
    EXPECT_EQ(b[FeatureSchema::kAnywhereUd + t], 0);
  }
}

TEST(LinguisticFeatures, ExhaustiveUpToLengthThree) {
  size_t checked = 0;
  for (size_t len = 1; len <= 3; ++len) {
    size_t total = 1;
    for (size_t k = 0; k < len; ++k) total *= kNumUdTags;
    for (size_t code = 0; code < total; ++code) {
      PosSeq pos;
      size_t rest = code;
      for (size_t k = 0; k < len; ++k) {
        pos.push_back(kAllUdTags[rest % kNumUdTags]);
        rest /= kNumUdTags;
      }
      LinguisticVector got = LinguisticFeatures(pos);
      std::vector<double> want = testing::ProseLinguisticFeatures(pos);
      ASSERT_EQ(std::vector<double>(got.begin(), got.end()), want)
          << JoinTags(pos);
      ++checked;
    }
  }
  EXPECT_EQ(checked, 17u + 17u * 17u + 17u * 17u * 17u);
}

FrequencyTable Table(std::map<std::string, int64_t> counts, int64_t total) {
  FrequencyTable t;
  for (const auto &[k, v] : counts) t.counts[k] = v;
  t.total = total;
  return t;
}

TEST(RelLogFreqSum, HandValues) {
  Stoplist stop;
  FrequencyTable t = Table({{"sila", 10}, {"teka", 100}}, 1000);
  std::vector<std::string> one = {"sila"};
  EXPECT_NEAR(RelLogFreqSum(one, t, stop), -4.605170185988091, 1e-12);
  std::vector<std::string> two = {"sila", "teka"};
  EXPECT_NEAR(RelLogFreqSum(two, t, stop), -6.907755278982137, 1e-12);
  std::vector<std::string> unseen = {"manjka"};
  EXPECT_NEAR(RelLogFreqSum(unseen, t, stop), -6.907755278982137, 1e-12);
  std::vector<std::string> stopped = {"v", "na"};
  EXPECT_EQ(RelLogFreqSum(stopped, t, stop), 0.0);
}

TEST(RelLogFreqSum, MatchesHandComputationOnRandomInstances) {
  std::mt19937_64 rng(123);
  std::vector<std::string> vocab = {"a",  "bb", "ccc", "v",   "na",
                                    "ee", "ff", "gg",  "pod", "hh"};
  std::vector<std::string> stop_words = {"v", "na", "pod"};
  Stoplist stop;
  std::uniform_int_distribution<int64_t> count(1, 5000);
  std::uniform_int_distribution<size_t> pick(0, vocab.size() - 1), len(1, 6);
  std::bernoulli_distribution present(0.7);
  for (int inst = 0; inst < 50; ++inst) {
    std::map<std::string, int64_t> counts;
    int64_t sum = 0;
    for (const std::string &w : vocab) {
      if (present(rng)) {
        counts[w] = count(rng);
        sum += counts[w];
      }
    }
    const int64_t total = sum + count(rng);
    FrequencyTable t = Table(counts, total);
    LemmaSeq a(len(rng)), b(len(rng));
    for (auto &w : a) w = vocab[pick(rng)];
    for (auto &w : b) w = vocab[pick(rng)];
    const double got_a = RelLogFreqSum(a, t, stop);
    EXPECT_NEAR(got_a, testing::HandRelLogFreqSum(a, counts, total, stop_words),
                1e-9);
    // Additivity over concatenation.
    LemmaSeq ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    EXPECT_NEAR(RelLogFreqSum(ab, t, stop),
                got_a + RelLogFreqSum(b, t, stop), 1e-9);
  }
}

TEST(StatisticalFeatures, Examples) {
  Stoplist stop;
  Candidate c;
  c.lemmas = {"analiza", "varianca", "kratek", "stik"};
  FrequencyTable g = Table({{"analiza", 5}}, 100);
  FrequencyTable d = Table({{"analiza", 50}}, 1000);
  auto s = StatisticalFeatures(c, g, d, stop);
  EXPECT_EQ(s[2], 4);
  Candidate uni;
  uni.lemmas = {"analiza"};
  auto u = StatisticalFeatures(uni, g, d, stop);
  EXPECT_NEAR(u[0], u[1], 1e-12);
  Candidate stopped;
  stopped.lemmas = {"v", "na"};
  auto z = StatisticalFeatures(stopped, g, d, stop);
  EXPECT_EQ(z[0], 0);
  EXPECT_EQ(z[1], 0);
  EXPECT_EQ(z[2], 2);
}

TEST(Cosine, DegenerateAndBasicCases) {
  std::vector<double> a = {1, 2, 3}, o = {0, 0, 0}, x = {1, 0}, y = {0, 5};
  EXPECT_NEAR(Cosine(a, a), 1.0, 1e-15);
  EXPECT_EQ(Cosine(x, y), 0.0);
  EXPECT_EQ(Cosine(a, o), 0.0);
}

TEST(FeatureSchema, WidthsAndMasks) {
  FeatureSchema schema;
  EXPECT_EQ(schema.size(), 2123u);
  EXPECT_EQ(schema.Columns(GroupMask::All()).size(), 2123u);
  EXPECT_EQ(schema.Columns(GroupMask::Parse("P")).size(), 69u);
  EXPECT_EQ(schema.Columns(GroupMask::Parse("S")).size(), 3u);
  EXPECT_EQ(schema.Columns(GroupMask::Parse("C")).size(), 2051u);
  EXPECT_EQ(schema.Columns(GroupMask::Parse("S&P")).size(), 72u);
  std::set<std::string> unique(schema.names().begin(), schema.names().end());
  EXPECT_EQ(unique.size(), schema.size());
  EXPECT_EQ(schema.names()[schema.elmo_sim()], "elmoSim");
  EXPECT_EQ(schema.names()[FeatureSchema::kTermLength], "TermLength");
  EXPECT_NE(schema.fingerprint(), FeatureSchema(8).fingerprint());
  EXPECT_EQ(schema.fingerprint(), FeatureSchema().fingerprint());
}

TEST(GroupMask, ParseAndOrder) {
  EXPECT_EQ(GroupMask::Parse("C,P,S"), GroupMask::All());
  EXPECT_EQ(GroupMask::Parse("SP").ToString(), "S&P");
  EXPECT_THROW(GroupMask::Parse(""), UsageError);
  EXPECT_THROW(GroupMask::Parse("Q"), UsageError);
  std::vector<std::string> names;
  for (GroupMask m : AblationOrder()) names.push_back(m.ToString());
  EXPECT_EQ(names, (std::vector<std::string>{"C&P&S", "C&P", "C&S", "S&P",
                                             "C", "S", "P"}));
}

struct Fixture {
  FrequencyTable general = Table({{"sila", 20}, {"riba", 5}}, 10000);
  FrequencyTable domain = Table({{"sila", 40}, {"riba", 2}}, 1000);
  EmbeddingStore general_store{StoreKind::kGeneral, kDefaultEmbeddingDim};
  EmbeddingStore domain_store{StoreKind::kDomain, kDefaultEmbeddingDim};
  Stoplist stop;

  Fixture() {
    std::mt19937_64 rng(9);
    std::normal_distribution<float> normal;
    std::vector<float> v(kDefaultEmbeddingDim);
    for (const char *w : {"sila", "riba", "kemija"}) {
      for (float &x : v) x = normal(rng);
      domain_store.Add(w, v, 0.25f);
      if (std::string(w) == "sila") general_store.Add(w, v);
    }
  }

  FeatureInputs Inputs() const {
    return FeatureInputs{general, domain, general_store, domain_store, stop,
                         "kemija"};
  }
};

Candidate Cand(LemmaSeq lemmas, const std::string &tags, Label label) {
  Candidate c;
  c.lemmas = std::move(lemmas);
  c.canonical_pos = ParsePosSeq(tags);
  c.occurrence_count = 1;
  c.label = label;
  return c;
}

TEST(Assemble, ShapeAndInvariants) {
  Fixture f;
  CandidateSet cands(CandidateSource::kShallowFilter, "kem",
                     {Cand({"sila"}, "NOUN", Label::kTerm),
                      Cand({"velik", "riba"}, "ADJ NOUN", Label::kNonTerm),
                      Cand({"kemija"}, "NOUN", Label::kTerm),
                      Cand({"neznan", "pojem"}, "ADJ NOUN", Label::kNonTerm)});
  FeatureMatrix m = Assemble(cands, f.Inputs());
  ASSERT_EQ(m.rows(), 4u);
  EXPECT_EQ(m.cols(), 2123u);
  const FeatureSchema &s = m.schema();
  for (size_t i = 0; i < m.rows(); ++i) {
    auto row = m.row(i);
    double start = 0, end = 0;
    for (size_t t = 0; t < kNumUdTags; ++t) {
      start += row[FeatureSchema::kStartUd + t];
      end += row[FeatureSchema::kEndUd + t];
    }
    EXPECT_EQ(start, 1);
    EXPECT_EQ(end, 1);
  }
  // Rows follow the sorted candidate order.
  auto find = [&](const LemmaSeq &l) {
    for (size_t i = 0; i < m.rows(); ++i) {
      if (m.keys()[i].lemmas == l) return i;
    }
    return m.rows();
  };
  // Same vector in both stores.
  EXPECT_NEAR(m.row(find({"sila"}))[s.elmo_sim()], 1.0, 1e-6);
  // Seed term against itself.
  EXPECT_NEAR(m.row(find({"kemija"}))[s.elmo_term_sim()], 1.0, 1e-6);
  // Fully out of vocabulary.
  auto oov = m.row(find({"neznan", "pojem"}));
  for (size_t j = FeatureSchema::kContextual; j < s.size(); ++j) {
    ASSERT_EQ(oov[j], 0.0f) << s.names()[j];
  }
  EXPECT_NEAR(m.row(find({"sila"}))[s.elmo_stdev()], 0.25, 1e-7);
}

TEST(Assemble, EmptySetGivesZeroRows) {
  Fixture f;
  FeatureMatrix m = Assemble(CandidateSet{}, f.Inputs());
  EXPECT_EQ(m.rows(), 0u);
  EXPECT_EQ(m.cols(), 2123u);
}

TEST(Assemble, DimensionMismatchIsError) {
  Fixture f;
  EmbeddingStore small(StoreKind::kGeneral, 8);
  FeatureInputs in{f.general, f.domain, small, f.domain_store, f.stop,
                   "kemija"};
  CandidateSet cands(CandidateSource::kShallowFilter, "kem",
                     {Cand({"sila"}, "NOUN", Label::kTerm)});
  EXPECT_THROW(Assemble(cands, in), DataError);
}

TEST(FeatureMatrix, SaveLoadRoundTrip) {
  Fixture f;
  CandidateSet cands(CandidateSource::kShallowFilter, "kem",
                     {Cand({"sila"}, "NOUN", Label::kTerm),
                      Cand({"velik", "riba"}, "ADJ NOUN", Label::kNonTerm)});
  FeatureMatrix m = Assemble(cands, f.Inputs());
  std::stringstream buf;
  SaveFeatureMatrix(m, buf, "{\"seed\":1}");
  FeatureMatrix back = LoadFeatureMatrix(buf);
  EXPECT_EQ(back.data(), m.data());
  EXPECT_EQ(back.labels(), m.labels());
  EXPECT_EQ(back.keys(), m.keys());
  EXPECT_EQ(back.schema().fingerprint(), m.schema().fingerprint());

  std::string bytes;
  {
    std::stringstream again;
    SaveFeatureMatrix(m, again);
    bytes = again.str();
  }
  std::stringstream cut(bytes.substr(0, bytes.size() - 5));
  EXPECT_THROW(LoadFeatureMatrix(cut), FormatError);
}

TEST(FeatureMatrix, ConcatChecksFingerprint) {
  FeatureMatrix a{FeatureSchema(4)}, b{FeatureSchema(8)};
  const FeatureMatrix *parts[] = {&a, &b};
  EXPECT_THROW(FeatureMatrix::Concat(parts), DataError);
  std::vector<double> row(a.cols(), 1.0);
  a.AppendRow(std::span<const double>(row), Label::kTerm, {"d", {"x"}});
  FeatureMatrix c{FeatureSchema(4)};
  c.AppendRow(std::span<const double>(row), Label::kNonTerm, {"e", {"x"}});
  const FeatureMatrix *ok[] = {&a, &c};
  FeatureMatrix joined = FeatureMatrix::Concat(ok);
  EXPECT_EQ(joined.rows(), 2u);
  EXPECT_EQ(joined.keys()[1].domain, "e");
  std::vector<double> short_row(3, 0.0);
  EXPECT_THROW(a.AppendRow(std::span<const double>(short_row), Label::kTerm,
                           {"d", {"y"}}),
               DataError);
}

}  // namespace
}  // namespace termex
