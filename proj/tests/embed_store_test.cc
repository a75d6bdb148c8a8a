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


#include "termex/embed_store.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "termex/error.h"

namespace termex {
namespace {

// Hand-built EMBS1 bytes, independent of SaveStore.
class Bytes {
 public:
  Bytes &Raw(const std::string &s) {
    out_ += s;
    return *this;
  }
  Bytes &U8(uint8_t v) {
    out_.push_back(static_cast<char>(v));
    return *this;
  }
  Bytes &U32(uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>(v >> (8 * i)));
    return *this;
  }
  Bytes &F32(float f) {
    uint32_t bits;
    std::memcpy(&bits, &f, 4);
    return U32(bits);
  }
  Bytes &Lemma(const std::string &s) {
    U32(static_cast<uint32_t>(s.size()));
    return Raw(s);
  }
  const std::string &str() const { return out_; }

 private:
  std::string out_;
};

std::string TwoLemmaDomainStore() {
  Bytes b;
  b.Raw("EMBS1").U8(1).U32(4).U32(2);
  b.Lemma("sila").F32(1).F32(2).F32(3).F32(4).F32(0.5f);
  b.Lemma("čas").F32(-1).F32(0).F32(0.25f).F32(8).F32(0.0f);
  return b.str();
}

TEST(LoadStore, ReadsHandBuiltBytes) {
  std::istringstream in(TwoLemmaDomainStore());
  EmbeddingStore store = LoadStore(in);
  EXPECT_EQ(store.kind(), StoreKind::kDomain);
  EXPECT_EQ(store.dim(), 4u);
  ASSERT_EQ(store.size(), 2u);
  const float *v = store.Find("čas");
  ASSERT_NE(v, nullptr);
  EXPECT_EQ(v[2], 0.25f);
  EXPECT_EQ(store.FindStdev("sila"), 0.5f);
  EXPECT_EQ(store.Find("manjka"), nullptr);
}

TEST(LoadStore, SaveReproducesBytesExactly) {
  std::istringstream in(TwoLemmaDomainStore());
  EmbeddingStore store = LoadStore(in);
  std::ostringstream out;
  SaveStore(store, out);
  EXPECT_EQ(out.str(), TwoLemmaDomainStore());
}

TEST(LoadStore, GeneralStoreHasNoStdev) {
  Bytes b;
  b.Raw("EMBS1").U8(0).U32(2).U32(1).Lemma("pes").F32(1).F32(-1);
  std::istringstream in(b.str());
  EmbeddingStore store = LoadStore(in);
  EXPECT_EQ(store.kind(), StoreKind::kGeneral);
  EXPECT_FALSE(store.FindStdev("pes").has_value());
}

TEST(LoadStore, Errors) {
  std::string good = TwoLemmaDomainStore();
  std::istringstream bad_magic("EMBS2" + good.substr(5));
  EXPECT_THROW(LoadStore(bad_magic), FormatError);

  std::istringstream truncated(good.substr(0, good.size() - 3));
  try {
    LoadStore(truncated);
    FAIL();
  } catch (const FormatError &e) {
    EXPECT_GT(e.offset(), 13u);
  }

  std::istringstream mismatch(good);
  EXPECT_THROW(LoadStore(mismatch, 8), FormatError);

  std::istringstream trailing(good + "x");
  EXPECT_THROW(LoadStore(trailing), FormatError);

  Bytes dup;
  dup.Raw("EMBS1").U8(0).U32(1).U32(2).Lemma("a").F32(1).Lemma("a").F32(2);
  std::istringstream dup_in(dup.str());
  EXPECT_THROW(LoadStore(dup_in), DataError);
}

TEST(TextStore, RoundTripsThroughBinary) {
  std::istringstream in(TwoLemmaDomainStore());
  EmbeddingStore store = LoadStore(in);
  std::stringstream text;
  SaveTextStore(store, text);
  EmbeddingStore back = LoadTextStore(text);
  std::ostringstream a, b;
  SaveStore(store, a);
  SaveStore(back, b);
  EXPECT_EQ(a.str(), b.str());
}

EmbeddingStore SmallStore() {
  EmbeddingStore s(StoreKind::kDomain, 2);
  std::vector<float> v = {1, 3}, w = {3, -1}, p = {100, 100};
  s.Add("sila", v, 0.2f);
  s.Add("teka", w, 0.4f);
  s.Add("v", p, 9.0f);  // stoplisted
  return s;
}

TEST(ComputeTermVector, AveragesPresentLemmas) {
  EmbeddingStore s = SmallStore();
  Stoplist stop;
  std::vector<std::string> one = {"sila"};
  TermVector a = ComputeTermVector(one, s, stop);
  EXPECT_EQ(a.values, (std::vector<double>{1, 3}));
  EXPECT_EQ(a.coverage, 1.0);

  std::vector<std::string> two = {"sila", "v", "teka"};
  TermVector b = ComputeTermVector(two, s, stop);
  EXPECT_EQ(b.values, (std::vector<double>{2, 1}));
  EXPECT_EQ(b.coverage, 1.0);

  std::vector<std::string> half = {"sila", "manjka"};
  EXPECT_EQ(ComputeTermVector(half, s, stop).coverage, 0.5);

  std::vector<std::string> none = {"manjka", "tudi"};
  TermVector z = ComputeTermVector(none, s, stop);
  EXPECT_EQ(z.values, (std::vector<double>{0, 0}));
  EXPECT_EQ(z.coverage, 0.0);
}

TEST(ComputeTermStdev, AveragesStdevs) {
  EmbeddingStore s = SmallStore();
  Stoplist stop;
  std::vector<std::string> one = {"sila"};
  EXPECT_NEAR(ComputeTermStdev(one, s, stop), 0.2, 1e-7);
  std::vector<std::string> two = {"sila", "teka"};
  EXPECT_NEAR(ComputeTermStdev(two, s, stop), 0.3, 1e-7);
  std::vector<std::string> none = {"manjka"};
  EXPECT_EQ(ComputeTermStdev(none, s, stop), 0.0);
  EmbeddingStore general(StoreKind::kGeneral, 2);
  EXPECT_THROW(ComputeTermStdev(one, general, stop), UsageError);
}

TEST(Stoplist, DefaultHoldsPrepositions) {
  Stoplist stop;
  EXPECT_EQ(stop.size(), 23u);
  for (const char *w : {"v", "na", "z", "s", "pred", "čez"}) {
    EXPECT_TRUE(stop.contains(w)) << w;
  }
  EXPECT_FALSE(stop.contains("sila"));
  std::istringstream in("# comment\nIN\n\nza\n");
  Stoplist loaded = LoadStoplist(in);
  EXPECT_EQ(loaded.size(), 2u);
  EXPECT_TRUE(loaded.contains("in"));
}

TEST(EmbeddingStore, AddValidates) {
  EmbeddingStore s(StoreKind::kDomain, 2);
  std::vector<float> bad = {1};
  EXPECT_THROW(s.Add("x", bad, 0.1f), DataError);
  std::vector<float> ok = {1, 2};
  EXPECT_THROW(s.Add("x", ok), DataError);
  EXPECT_THROW(s.Add("x", ok, -1.0f), DataError);
  EXPECT_THROW(s.Add("x", ok, NAN), DataError);
}

}  // namespace
}  // namespace termex
