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

// Annotated corpora, gold-standard term lists and frequency tables, plus the
// descriptive statistics computed over gold terms.

#ifndef TERMEX_CORPUS_H_
#define TERMEX_CORPUS_H_

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "termex/text_util.h"
#include "termex/ud_tag.h"

namespace termex {

struct Token {
  std::string surface;
  std::string lemma;  // lowercased, nonempty
  UdTag upos = UdTag::kX;
};

struct Sentence {
  std::vector<Token> tokens;
};

struct Corpus {
  std::string domain_name;
  std::vector<Sentence> sentences;
  int64_t token_count = 0;
};

struct GoldTermSet {
  std::string domain_name;
  std::set<LemmaSeq> terms;

  bool contains(const LemmaSeq &term) const { return terms.count(term) > 0; }
  size_t size() const { return terms.size(); }
};

// Lemma frequencies of a reference corpus. `total` is the corpus size in
// tokens.
struct FrequencyTable {
  std::unordered_map<std::string, int64_t> counts;
  int64_t total = 0;

  // Stored count, or 0 when the lemma is absent.
  int64_t count(const std::string &lemma) const {
    auto it = counts.find(lemma);
    return it == counts.end() ? 0 : it->second;
  }
};

// Reads CoNLL-U. Consumes FORM, LEMMA and UPOS; skips comments, multiword
// token ranges ("1-2") and empty nodes ("1.1"). Throws ParseError naming the
// offending line on a wrong column count, unknown UPOS, empty lemma or an
// input without any sentence.
Corpus ParseConllu(std::istream &in, const std::string &domain_name,
                   const std::string &source = "<conllu>");

// Writes the consumed columns back as CoNLL-U; the other columns are "_".
void WriteConllu(const Corpus &corpus, std::ostream &out);

// One space-separated lemmatized term per line; blank lines ignored.
// Lowercases and deduplicates. Throws ParseError on invalid UTF-8.
GoldTermSet LoadGoldTerms(std::istream &in, const std::string &domain_name,
                          const std::string &source = "<gold>");

// "lemma<TAB>count" lines with an optional "#total<TAB>N" header. Without
// the header, total is the sum of the counts. Throws ParseError on
// nonpositive counts, duplicate lemmas or a total below the largest count.
FrequencyTable LoadFreqList(std::istream &in,
                            const std::string &source = "<freq>");

// Lemma counts of `corpus`, with total = corpus.token_count.
FrequencyTable FrequencyTableFromCorpus(const Corpus &corpus);

// Calls `visit` for every contiguous intra-sentence occurrence of a gold
// term, in corpus order.
void ForEachOccurrence(
    const Corpus &corpus, const GoldTermSet &gold,
    const std::function<void(const LemmaSeq &term,
                             std::span<const Token> window)> &visit);

using TagHistogram = std::array<int64_t, kNumUdTags>;

// Descriptive statistics over the gold terms of one domain.
struct StatsReport {
  std::string domain_name;
  int64_t gold_terms = 0;
  // Gold terms with at least one occurrence in the corpus.
  int64_t gold_terms_found = 0;

  // Lemma-based, one count per gold term.
  std::map<int64_t, int64_t> token_length;
  std::map<int64_t, int64_t> char_length;  // code points, spaces included
  // Occurrences per gold term -> number of gold terms. Key 0 collects terms
  // never seen in the corpus.
  std::map<int64_t, int64_t> term_frequency;

  // Occurrence-based.
  TagHistogram unigram_pos{};
  TagHistogram first_pos{};
  TagHistogram last_pos{};     // multi-token terms only
  TagHistogram pos_in_term{};  // every token of every occurrence

  int64_t longest_term() const {
    return token_length.empty() ? 0 : token_length.rbegin()->first;
  }
  // Share of unigram occurrences tagged NOUN or PROPN; 0 when none.
  double unigram_noun_share() const;
};

StatsReport Analyze(const Corpus &corpus, const GoldTermSet &gold);

// Named TSV tables, one per histogram, each with a header row.
std::map<std::string, std::string> StatsTables(const StatsReport &report);

std::string StatsJson(const StatsReport &report);

}  // namespace termex

#endif  // TERMEX_CORPUS_H_
