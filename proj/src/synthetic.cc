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


#include "termex/synthetic.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "termex/manifest.h"
#include "termex/text_util.h"

namespace termex {
namespace {

constexpr const char *kSyllables[] = {"ka", "lo", "mi", "ne", "su", "ta",
                                      "ve", "ri", "po", "de", "zu", "ba",
                                      "ge", "fi", "jo", "hu", "sk", "tr"};
constexpr const char *kPrepositions[] = {"v", "na", "z", "pri", "za", "o"};

struct DomainSpec {
  const char *name;
  const char *seed_term;
};
constexpr DomainSpec kDomains[] = {{"bim", "biomehanika"},
                                   {"kem", "kemija"},
                                   {"vet", "veterina"},
                                   {"ling", "jezikoslovje"}};

class WordMaker {
 public:
  explicit WordMaker(std::mt19937_64 &rng) : rng_(rng) {}

  std::vector<std::string> Make(size_t count, const std::string &suffix) {
    std::uniform_int_distribution<size_t> syl(0, std::size(kSyllables) - 1);
    std::uniform_int_distribution<int> len(2, 4);
    std::vector<std::string> out;
    while (out.size() < count) {
      std::string w;
      for (int i = len(rng_); i > 0; --i) w += kSyllables[syl(rng_)];
      w += suffix;
      if (used_.insert(w).second) out.push_back(w);
    }
    return out;
  }

 private:
  std::mt19937_64 &rng_;
  std::unordered_set<std::string> used_;
};

struct Lexicon {
  std::vector<std::string> general_nouns, general_adjs, verbs, adverbs;
  std::vector<std::vector<std::string>> domain_nouns, domain_adjs;
};

template <typename T>
const T &Pick(std::mt19937_64 &rng, const std::vector<T> &v) {
  std::uniform_int_distribution<size_t> d(0, v.size() - 1);
  return v[d(rng)];
}

Sentence MakeSentence(std::mt19937_64 &rng, const Lexicon &lex, size_t k) {
  std::bernoulli_distribution domain_noun(0.35), domain_adj(0.3),
      adverb(0.1), genitive(0.2), tail(0.4);
  std::uniform_int_distribution<int> adjs(0, 2);
  Sentence s;
  auto add = [&](const std::string &lemma, UdTag tag) {
    s.tokens.push_back(Token{lemma, lemma, tag});
  };
  auto noun = [&] {
    add(domain_noun(rng) ? Pick(rng, lex.domain_nouns[k])
                         : Pick(rng, lex.general_nouns),
        UdTag::kNoun);
  };
  auto adj = [&] {
    add(domain_adj(rng) ? Pick(rng, lex.domain_adjs[k])
                        : Pick(rng, lex.general_adjs),
        UdTag::kAdj);
  };
  if (adverb(rng)) add(Pick(rng, lex.adverbs), UdTag::kAdv);
  for (int i = adjs(rng); i > 0; --i) adj();
  noun();
  if (genitive(rng)) noun();
  add(Pick(rng, lex.verbs), UdTag::kVerb);
  if (adjs(rng) > 0) adj();
  noun();
  if (tail(rng)) {
    std::uniform_int_distribution<size_t> p(0, std::size(kPrepositions) - 1);
    add(kPrepositions[p(rng)], UdTag::kAdp);
    if (adjs(rng) == 2) adj();
    noun();
  }
  add(".", UdTag::kPunct);
  return s;
}

std::vector<float> Normalized(std::vector<float> v) {
  double n = 0.0;
  for (float x : v) n += static_cast<double>(x) * x;
  n = std::sqrt(n);
  for (float &x : v) x = static_cast<float>(x / n);
  return v;
}

std::string SaveStoreBytes(const EmbeddingStore &store, bool text) {
  std::ostringstream out;
  if (text) {
    SaveTextStore(store, out);
  } else {
    SaveStore(store, out);
  }
  return out.str();
}

}  // namespace

std::vector<float> FakeEncoderVector(std::string_view key, uint32_t dim) {
  std::mt19937_64 rng(Fnv1a(key));
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(double(dim)));
  std::vector<float> v(dim);
  for (float &x : v) x = static_cast<float>(normal(rng));
  return v;
}

SyntheticDataset MakeSyntheticDataset(const SyntheticOptions &options) {
  std::mt19937_64 rng(options.seed);
  WordMaker words(rng);
  Lexicon lex;
  lex.general_nouns = words.Make(80, "a");
  lex.general_adjs = words.Make(30, "en");
  lex.verbs = words.Make(25, "ti");
  lex.adverbs = words.Make(8, "no");
  for (const DomainSpec &spec : kDomains) {
    std::vector<std::string> nouns = words.Make(40, "ija");
    nouns.push_back(spec.seed_term);
    lex.domain_nouns.push_back(std::move(nouns));
    lex.domain_adjs.push_back(words.Make(10, "ski"));
  }

  SyntheticDataset out;
  ExperimentData &data = out.data;
  const uint32_t dim = options.dim;
  data.general_store = EmbeddingStore(StoreKind::kGeneral, dim);
  std::set<std::string> general_lemmas;
  std::uniform_int_distribution<int64_t> common(1000, 5000), rare(1, 20);
  std::bernoulli_distribution keep_general(0.5);

  // Shared by every domain so that termhood transfers across domains.
  const std::vector<float> direction =
      Normalized(FakeEncoderVector("direction", dim));
  for (size_t k = 0; k < std::size(kDomains); ++k) {
    DomainData d;
    d.name = kDomains[k].name;
    d.seed_term = kDomains[k].seed_term;
    d.corpus.domain_name = d.name;
    // A title line so the seed term always has a vector.
    d.corpus.sentences.push_back(
        Sentence{{Token{d.seed_term, d.seed_term, UdTag::kNoun},
                  Token{".", ".", UdTag::kPunct}}});
    d.corpus.token_count = 2;
    for (int i = 0; i < options.sentences_per_domain; ++i) {
      d.corpus.sentences.push_back(MakeSentence(rng, lex, k));
      d.corpus.token_count +=
          static_cast<int64_t>(d.corpus.sentences.back().tokens.size());
    }
    d.freq = FrequencyTableFromCorpus(d.corpus);

    std::set<std::string> domain_words(lex.domain_nouns[k].begin(),
                                       lex.domain_nouns[k].end());
    domain_words.insert(lex.domain_adjs[k].begin(), lex.domain_adjs[k].end());
    std::set<std::string> lemmas;
    for (const Sentence &s : d.corpus.sentences) {
      for (const Token &t : s.tokens) lemmas.insert(t.lemma);
    }
    d.store = EmbeddingStore(StoreKind::kDomain, dim);
    for (const std::string &lemma : lemmas) {
      std::vector<float> v = FakeEncoderVector(lemma, dim);
      const bool in_domain = domain_words.count(lemma) > 0;
      if (in_domain) {
        for (uint32_t j = 0; j < dim; ++j) {
          v[j] += static_cast<float>(options.shift * direction[j]);
        }
      }
      const float stdev =
          static_cast<float>(0.1 + 0.3 * (Fnv1a(lemma) % 1000) / 1000.0);
      d.store.Add(lemma, v, stdev);
      if (!in_domain || keep_general(rng)) general_lemmas.insert(lemma);
    }
    data.domains.push_back(std::move(d));
  }

  data.general_freq.total = 1000000;
  for (const std::string &lemma : general_lemmas) {
    data.general_store.Add(lemma, FakeEncoderVector(lemma, dim));
    bool domain_word = std::any_of(
        lex.domain_nouns.begin(), lex.domain_nouns.end(), [&](const auto &v) {
          return std::find(v.begin(), v.end(), lemma) != v.end();
        });
    data.general_freq.counts[lemma] = domain_word ? rare(rng) : common(rng);
  }

  // Label rule over the elmoTermSim feature.
  std::vector<std::vector<std::pair<LemmaSeq, double>>> scored;
  std::vector<double> pooled;
  for (const DomainData &d : data.domains) {
    std::vector<double> seed = SeedVector(d.seed_term, d.store, data.stoplist);
    CandidateSet cands = GenerateCandidates(d.corpus, FilterConfig{});
    std::vector<std::pair<LemmaSeq, double>> rows;
    for (const Candidate &c : cands.candidates()) {
      double s = Cosine(
          ComputeTermVector(c.lemmas, d.store, data.stoplist).values, seed);
      rows.emplace_back(c.lemmas, s);
      pooled.push_back(s);
    }
    scored.push_back(std::move(rows));
  }
  std::sort(pooled.begin(), pooled.end());
  double best_gap = -1.0;
  out.threshold = 0.5;
  // Widest gap within the middle three fifths, so both labels are common.
  const size_t lo = std::max<size_t>(1, pooled.size() / 5);
  const size_t hi = pooled.size() - pooled.size() / 5;
  for (size_t i = lo; i < hi; ++i) {
    const double mid = 0.5 * (pooled[i - 1] + pooled[i]);
    const double gap = pooled[i] - pooled[i - 1];
    if (gap > best_gap) {
      best_gap = gap;
      out.threshold = mid;
    }
  }
  for (size_t k = 0; k < data.domains.size(); ++k) {
    DomainData &d = data.domains[k];
    d.gold.domain_name = d.name;
    for (const auto &[lemmas, s] : scored[k]) {
      if (s > out.threshold) d.gold.terms.insert(lemmas);
    }
    // Two terms the filter can never produce.
    d.gold.terms.insert({lex.verbs[k]});
    d.gold.terms.insert({lex.domain_nouns[k][0], lex.verbs[k]});
  }
  return out;
}

std::string WriteSyntheticDataset(const SyntheticDataset &dataset,
                                  const std::filesystem::path &dir,
                                  bool text_store) {
  const ExperimentData &data = dataset.data;
  const std::string store_ext = text_store ? ".embs.txt" : ".embs";
  nlohmann::json domains = nlohmann::json::array();
  for (const DomainData &d : data.domains) {
    std::ostringstream corpus;
    WriteConllu(d.corpus, corpus);
    WriteFileAtomic(dir / (d.name + ".conllu"), corpus.str());
    std::ostringstream gold;
    for (const LemmaSeq &term : d.gold.terms) gold << Join(term, " ") << '\n';
    WriteFileAtomic(dir / (d.name + ".gold.txt"), gold.str());
    WriteFileAtomic(dir / (d.name + store_ext),
                    SaveStoreBytes(d.store, text_store));
    domains.push_back({{"name", d.name},
                       {"corpus", d.name + ".conllu"},
                       {"gold", d.name + ".gold.txt"},
                       {"seed_term", d.seed_term},
                       {"store", d.name + store_ext}});
  }
  WriteFileAtomic(dir / ("general" + store_ext),
                  SaveStoreBytes(data.general_store, text_store));
  std::ostringstream freq;
  freq << "#total\t" << data.general_freq.total << '\n';
  std::vector<std::pair<std::string, int64_t>> counts(
      data.general_freq.counts.begin(), data.general_freq.counts.end());
  std::sort(counts.begin(), counts.end());
  for (const auto &[lemma, n] : counts) freq << lemma << '\t' << n << '\n';
  WriteFileAtomic(dir / "general.freq", freq.str());

  nlohmann::json cfg;
  cfg["domains"] = std::move(domains);
  cfg["general_store"] = "general" + store_ext;
  cfg["general_freq"] = "general.freq";
  cfg["text_store"] = text_store;
  const std::filesystem::path path = dir / "config.json";
  WriteFileAtomic(path, cfg.dump(2) + "\n");
  return path.string();
}

}  // namespace termex
