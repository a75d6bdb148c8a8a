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

#include "termex/candidates.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "termex/error.h"

namespace termex {
namespace {

// Per-key accumulator. Variants are the distinct POS sequences observed on
// passing occurrences, in order of first appearance.
struct Accumulator {
  struct Variant {
    PosSeq pos;
    int64_t count = 0;
  };
  std::vector<Variant> variants;
  int64_t total = 0;

  void Add(std::span<const UdTag> pos) {
    ++total;
    for (Variant &v : variants) {
      if (std::equal(v.pos.begin(), v.pos.end(), pos.begin(), pos.end())) {
        ++v.count;
        return;
      }
    }
    variants.push_back({PosSeq(pos.begin(), pos.end()), 1});
  }

  // Most frequent variant; ties go to the earliest seen.
  const PosSeq &Canonical() const {
    const Variant *best = &variants.front();
    for (const Variant &v : variants) {
      if (v.count > best->count) best = &v;
    }
    return best->pos;
  }
};

using AccumulatorMap =
    std::unordered_map<LemmaSeq, Accumulator, LemmaSeqHash>;

CandidateSet Finish(CandidateSource source, const std::string &domain,
                    AccumulatorMap &accumulators) {
  std::vector<Candidate> out;
  out.reserve(accumulators.size());
  for (auto &[lemmas, acc] : accumulators) {
    Candidate c;
    c.lemmas = lemmas;
    c.canonical_pos = acc.Canonical();
    c.occurrence_count = acc.total;
    c.domain_name = domain;
    out.push_back(std::move(c));
  }
  return CandidateSet(source, domain, std::move(out));
}

// A token that makes every window containing it fail the filter, so
// enumeration from the current start can stop.
bool BlocksExtension(const Token &token, size_t offset,
                     const FilterConfig &cfg) {
  if (cfg.forbidden_anywhere.contains(token.upos)) return true;
  if (cfg.exclude_adp_adv_internal) {
    if (token.upos == UdTag::kAdp) return true;
    if (token.upos == UdTag::kAdv && offset > 0) return true;
  }
  return token.lemma.find_first_of(cfg.forbidden_chars) != std::string::npos;
}

bool ParseInt(std::string_view text, int64_t *value) {
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), *value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

void FilterConfig::Validate() const {
  if (max_len < 1) {
    throw UsageError("max_len must be at least 1, got " +
                     std::to_string(max_len));
  }
  if (min_chars < 0) {
    throw UsageError("min_chars must be nonnegative");
  }
}

bool PassesFilter(std::span<const UdTag> pos, std::string_view lemma_string,
                  const FilterConfig &cfg) {
  if (pos.empty()) return false;
  // Rule 1: minimum length.
  if (Utf8Length(lemma_string) <= static_cast<size_t>(cfg.min_chars)) {
    return false;
  }
  // Rules 2 and 3: unigram tag, final tag.
  if (pos.size() == 1) {
    if (!cfg.allowed_unigram.contains(pos.front())) return false;
  } else if (!cfg.allowed_last.contains(pos.back())) {
    return false;
  }
  // Rule 4: first tag.
  if (!cfg.allowed_first.contains(pos.front())) return false;
  // Rule 5: forbidden tags.
  for (size_t i = 0; i < pos.size(); ++i) {
    if (cfg.forbidden_anywhere.contains(pos[i])) return false;
    if (cfg.exclude_adp_adv_internal) {
      if (pos[i] == UdTag::kAdp) return false;
      if (pos[i] == UdTag::kAdv && i > 0) return false;
    }
  }
  // Rule 6: forbidden characters.
  return lemma_string.find_first_of(cfg.forbidden_chars) ==
         std::string_view::npos;
}

std::string_view LabelName(Label label) {
  switch (label) {
    case Label::kTerm:
      return "term";
    case Label::kNonTerm:
      return "non-term";
    case Label::kUnlabeled:
      break;
  }
  return "unlabeled";
}

Label ParseLabel(std::string_view name) {
  if (name == "term") return Label::kTerm;
  if (name == "non-term") return Label::kNonTerm;
  if (name == "unlabeled") return Label::kUnlabeled;
  throw DataError("unknown label '" + std::string(name) + "'");
}

std::string_view SourceName(CandidateSource source) {
  return source == CandidateSource::kPattern ? "pattern" : "shallow_filter";
}

CandidateSource ParseSource(std::string_view name) {
  if (name == "shallow_filter" || name == "shallow") {
    return CandidateSource::kShallowFilter;
  }
  if (name == "pattern") return CandidateSource::kPattern;
  throw UsageError("unknown candidate source '" + std::string(name) +
                   "' (expected shallow or pattern)");
}

CandidateSet::CandidateSet(CandidateSource source, std::string domain_name,
                           std::vector<Candidate> candidates)
    : source_(source),
      domain_name_(std::move(domain_name)),
      candidates_(std::move(candidates)) {
  std::sort(candidates_.begin(), candidates_.end(),
            [](const Candidate &a, const Candidate &b) {
              return a.lemmas < b.lemmas;
            });
  auto dup = std::adjacent_find(candidates_.begin(), candidates_.end(),
                                [](const Candidate &a, const Candidate &b) {
                                  return a.lemmas == b.lemmas;
                                });
  if (dup != candidates_.end()) {
    throw DataError("duplicate candidate '" + Join(dup->lemmas, " ") + "'");
  }
}

const Candidate *CandidateSet::Find(const LemmaSeq &lemmas) const {
  auto it = std::lower_bound(
      candidates_.begin(), candidates_.end(), lemmas,
      [](const Candidate &c, const LemmaSeq &key) { return c.lemmas < key; });
  if (it == candidates_.end() || it->lemmas != lemmas) return nullptr;
  return &*it;
}

int64_t CandidateSet::CountLabel(Label label) const {
  return std::count_if(candidates_.begin(), candidates_.end(),
                       [&](const Candidate &c) { return c.label == label; });
}

CandidateSet GenerateCandidates(const Corpus &corpus, const FilterConfig &cfg) {
  cfg.Validate();
  AccumulatorMap accumulators;
  LemmaSeq window;
  std::string lemma_string;
  std::vector<UdTag> pos;
  for (const Sentence &sentence : corpus.sentences) {
    const std::vector<Token> &tokens = sentence.tokens;
    for (size_t start = 0; start < tokens.size(); ++start) {
      window.clear();
      lemma_string.clear();
      pos.clear();
      size_t end = std::min(tokens.size(), start + cfg.max_len);
      for (size_t i = start; i < end; ++i) {
        const Token &t = tokens[i];
        if (BlocksExtension(t, i - start, cfg)) break;
        if (!window.empty()) lemma_string.push_back(' ');
        lemma_string.append(t.lemma);
        window.push_back(t.lemma);
        pos.push_back(t.upos);
        if (PassesFilter(pos, lemma_string, cfg)) accumulators[window].Add(pos);
      }
    }
  }
  return Finish(CandidateSource::kShallowFilter, corpus.domain_name,
                accumulators);
}

PatternSet MinePatterns(const Corpus &corpus, const GoldTermSet &gold) {
  PatternSet patterns;
  ForEachOccurrence(corpus, gold,
                    [&](const LemmaSeq &, std::span<const Token> window) {
                      PosSeq seq;
                      for (const Token &t : window) seq.push_back(t.upos);
                      patterns.insert(std::move(seq));
                    });
  return patterns;
}

CandidateSet GenerateCandidatesByPattern(const Corpus &corpus,
                                         const PatternSet &patterns) {
  // Every prefix of a pattern; a window outside this set cannot be extended
  // into a match.
  std::set<PosSeq> prefixes;
  size_t max_len = 0;
  for (const PosSeq &p : patterns) {
    max_len = std::max(max_len, p.size());
    for (size_t n = 1; n <= p.size(); ++n) {
      prefixes.emplace(p.begin(), p.begin() + n);
    }
  }
  AccumulatorMap accumulators;
  LemmaSeq window;
  PosSeq pos;
  for (const Sentence &sentence : corpus.sentences) {
    const std::vector<Token> &tokens = sentence.tokens;
    for (size_t start = 0; start < tokens.size(); ++start) {
      window.clear();
      pos.clear();
      size_t end = std::min(tokens.size(), start + max_len);
      for (size_t i = start; i < end; ++i) {
        window.push_back(tokens[i].lemma);
        pos.push_back(tokens[i].upos);
        if (!prefixes.count(pos)) break;
        if (patterns.count(pos)) accumulators[window].Add(pos);
      }
    }
  }
  return Finish(CandidateSource::kPattern, corpus.domain_name, accumulators);
}

CandidateSet LabelCandidates(CandidateSet cands, const GoldTermSet &gold) {
  for (Candidate &c : cands.mutable_candidates()) {
    c.label = gold.contains(c.lemmas) ? Label::kTerm : Label::kNonTerm;
  }
  return cands;
}

double MaxRecall(const CandidateSet &cands, const GoldTermSet &gold) {
  if (gold.terms.empty()) return 0.0;
  int64_t covered = 0;
  for (const LemmaSeq &term : gold.terms) {
    if (cands.contains(term)) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(gold.size());
}

void WriteCandidatesTsv(const CandidateSet &cands, std::ostream &out,
                        std::span<const std::string> preamble) {
  for (const std::string &line : preamble) out << "# " << line << '\n';
  out << "# domain\t" << cands.domain_name() << '\n';
  out << "# source\t" << SourceName(cands.source()) << '\n';
  out << "lemmas\tpos\toccurrences\tlabel\n";
  for (const Candidate &c : cands.candidates()) {
    out << Join(c.lemmas, " ") << '\t' << JoinTags(c.canonical_pos) << '\t'
        << c.occurrence_count << '\t' << LabelName(c.label) << '\n';
  }
}

CandidateSet ReadCandidatesTsv(std::istream &in, const std::string &source) {
  std::string domain;
  CandidateSource cand_source = CandidateSource::kShallowFilter;
  std::vector<Candidate> rows;
  bool header_seen = false;
  std::string raw;
  int64_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = StripCr(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.starts_with("# domain\t")) {
        domain = std::string(line.substr(9));
      } else if (line.starts_with("# source\t")) {
        cand_source = ParseSource(line.substr(9));
      }
      continue;
    }
    std::vector<std::string> cols = Split(line, '\t');
    if (!header_seen) {
      if (cols.size() != 4 || cols[0] != "lemmas") {
        throw ParseError(source, line_no, "missing candidates header row");
      }
      header_seen = true;
      continue;
    }
    if (cols.size() != 4) {
      throw ParseError(source, line_no, "expected 4 columns");
    }
    Candidate c;
    c.lemmas = SplitNonEmpty(cols[0], ' ');
    try {
      c.canonical_pos = ParsePosSeq(cols[1]);
      c.label = ParseLabel(cols[3]);
    } catch (const DataError &e) {
      throw ParseError(source, line_no, e.what());
    }
    if (c.lemmas.empty() || c.lemmas.size() != c.canonical_pos.size()) {
      throw ParseError(source, line_no, "lemma and POS lengths differ");
    }
    if (!ParseInt(cols[2], &c.occurrence_count) || c.occurrence_count < 1) {
      throw ParseError(source, line_no, "occurrence count must be >= 1");
    }
    c.domain_name = domain;
    rows.push_back(std::move(c));
  }
  if (!header_seen) throw ParseError(source, line_no, "empty candidates file");
  return CandidateSet(cand_source, domain, std::move(rows));
}

}  // namespace termex
