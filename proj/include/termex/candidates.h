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

// Candidate term generation: n-gram enumeration under the shallow POS/string
// filter or a mined POS-pattern list, deduplication by lemma sequence and
// labelling against a gold standard.

#ifndef TERMEX_CANDIDATES_H_
#define TERMEX_CANDIDATES_H_

#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "termex/corpus.h"
#include "termex/ud_tag.h"

namespace termex {

struct FilterConfig {
  int max_len = 11;
  // The space-joined lemma string must be strictly longer than this, in code
  // points.
  int min_chars = 3;
  TagSet forbidden_anywhere = {
      UdTag::kVerb, UdTag::kSym,  UdTag::kSconj, UdTag::kPunct,
      UdTag::kPron, UdTag::kPart, UdTag::kIntj,  UdTag::kDet,
      UdTag::kCconj, UdTag::kAux, UdTag::kX,
  };
  TagSet allowed_first = {UdTag::kAdj, UdTag::kAdv, UdTag::kNoun,
                          UdTag::kPropn};
  TagSet allowed_last = {UdTag::kNoun, UdTag::kPropn};
  TagSet allowed_unigram = {UdTag::kNoun, UdTag::kPropn};
  // No ADP anywhere, no ADV after the first position.
  bool exclude_adp_adv_internal = true;
  std::string forbidden_chars = ",_";

  // Throws UsageError when max_len < 1.
  void Validate() const;
};

// The six-rule shallow filter for one occurrence.
bool PassesFilter(std::span<const UdTag> pos, std::string_view lemma_string,
                  const FilterConfig &cfg);

enum class Label : uint8_t { kUnlabeled, kTerm, kNonTerm };

std::string_view LabelName(Label label);
Label ParseLabel(std::string_view name);

struct Candidate {
  LemmaSeq lemmas;
  PosSeq canonical_pos;
  int64_t occurrence_count = 0;
  std::string domain_name;
  Label label = Label::kUnlabeled;
};

enum class CandidateSource : uint8_t { kShallowFilter, kPattern };

std::string_view SourceName(CandidateSource source);
CandidateSource ParseSource(std::string_view name);

// Candidates sorted by lemma sequence, one per key.
class CandidateSet {
 public:
  CandidateSet() = default;
  CandidateSet(CandidateSource source, std::string domain_name,
               std::vector<Candidate> candidates);

  CandidateSource source() const { return source_; }
  const std::string &domain_name() const { return domain_name_; }
  const std::vector<Candidate> &candidates() const { return candidates_; }
  std::vector<Candidate> &mutable_candidates() { return candidates_; }
  size_t size() const { return candidates_.size(); }
  bool empty() const { return candidates_.empty(); }

  // nullptr when absent.
  const Candidate *Find(const LemmaSeq &lemmas) const;
  bool contains(const LemmaSeq &lemmas) const {
    return Find(lemmas) != nullptr;
  }

  int64_t CountLabel(Label label) const;

 private:
  CandidateSource source_ = CandidateSource::kShallowFilter;
  std::string domain_name_;
  std::vector<Candidate> candidates_;
};

using PatternSet = std::set<PosSeq>;

CandidateSet GenerateCandidates(const Corpus &corpus, const FilterConfig &cfg);

// Distinct POS sequences over all occurrences of all gold terms.
PatternSet MinePatterns(const Corpus &corpus, const GoldTermSet &gold);

// N-grams whose occurrence POS sequence is one of `patterns`; no other
// filtering.
CandidateSet GenerateCandidatesByPattern(const Corpus &corpus,
                                         const PatternSet &patterns);

// label = term iff the lemma sequence is a gold term.
CandidateSet LabelCandidates(CandidateSet cands, const GoldTermSet &gold);

// Fraction of gold terms present among the candidates; 0 for empty gold.
double MaxRecall(const CandidateSet &cands, const GoldTermSet &gold);

// TSV with columns lemmas, pos, occurrences, label. `preamble` lines are
// written first, each prefixed with "# ".
void WriteCandidatesTsv(const CandidateSet &cands, std::ostream &out,
                        std::span<const std::string> preamble = {});

// Reads WriteCandidatesTsv output. The domain and source come from the
// "# domain" and "# source" comment lines when present.
CandidateSet ReadCandidatesTsv(std::istream &in,
                               const std::string &source = "<candidates>");

}  // namespace termex

#endif  // TERMEX_CANDIDATES_H_
