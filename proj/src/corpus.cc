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

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "termex/error.h"

namespace termex {
namespace {

constexpr size_t kConlluColumns = 10;

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

// Multiword token ranges ("1-2") and empty nodes ("1.1").
bool IsSyntacticWordId(std::string_view id) {
  return id.find('-') == std::string_view::npos &&
         id.find('.') == std::string_view::npos;
}

bool ParseCount(std::string_view text, int64_t *value) {
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), *value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

void AddAll(const TagHistogram &h, nlohmann::json *out) {
  for (UdTag tag : kAllUdTags) (*out)[std::string(UdTagName(tag))] = h[Index(tag)];
}

std::string LengthTable(const char *key, const std::map<int64_t, int64_t> &h) {
  std::ostringstream os;
  os << key << "\tterms\n";
  for (const auto &[k, v] : h) os << k << '\t' << v << '\n';
  return os.str();
}

std::string TagTable(const TagHistogram &h) {
  std::ostringstream os;
  os << "upos\tcount\n";
  for (UdTag tag : kAllUdTags) os << UdTagName(tag) << '\t' << h[Index(tag)] << '\n';
  return os.str();
}

}  // namespace

Corpus ParseConllu(std::istream &in, const std::string &domain_name,
                   const std::string &source) {
  Corpus corpus;
  corpus.domain_name = domain_name;
  Sentence current;
  std::string raw;
  int64_t line_no = 0;

  const auto flush = [&]() {
    if (current.tokens.empty()) return;
    corpus.token_count += static_cast<int64_t>(current.tokens.size());
    corpus.sentences.push_back(std::move(current));
    current = Sentence();
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = StripCr(raw);
    if (IsBlank(line)) {
      flush();
      continue;
    }
    if (line.front() == '#') continue;
    if (!IsValidUtf8(line)) throw ParseError(source, line_no, "invalid UTF-8");

    std::vector<std::string> cols = Split(line, '\t');
    if (cols.size() != kConlluColumns) {
      throw ParseError(source, line_no,
                       "expected 10 tab-separated columns, got " +
                           std::to_string(cols.size()));
    }
    if (!IsSyntacticWordId(cols[0])) continue;

    std::optional<UdTag> upos = ParseUdTag(cols[3]);
    if (!upos) {
      throw ParseError(source, line_no, "unknown UPOS tag '" + cols[3] + "'");
    }
    Token token;
    token.surface = std::move(cols[1]);
    // An unspecified lemma falls back to the word form.
    const std::string &lemma =
        (cols[2] == "_" && token.surface != "_") ? token.surface : cols[2];
    if (lemma.empty()) throw ParseError(source, line_no, "empty lemma");
    token.lemma = ToLowerUtf8(lemma);
    token.upos = *upos;
    current.tokens.push_back(std::move(token));
  }
  flush();
  if (corpus.sentences.empty()) {
    throw ParseError(source, line_no, "no sentences in CoNLL-U input");
  }
  return corpus;
}

void WriteConllu(const Corpus &corpus, std::ostream &out) {
  for (const Sentence &sentence : corpus.sentences) {
    for (size_t i = 0; i < sentence.tokens.size(); ++i) {
      const Token &t = sentence.tokens[i];
      out << (i + 1) << '\t' << t.surface << '\t' << t.lemma << '\t'
          << UdTagName(t.upos) << "\t_\t_\t_\t_\t_\t_\n";
    }
    out << '\n';
  }
}

GoldTermSet LoadGoldTerms(std::istream &in, const std::string &domain_name,
                          const std::string &source) {
  GoldTermSet gold;
  gold.domain_name = domain_name;
  std::string raw;
  int64_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = StripCr(raw);
    if (!IsValidUtf8(line)) throw ParseError(source, line_no, "invalid UTF-8");
    LemmaSeq term = SplitNonEmpty(ToLowerUtf8(line), ' ');
    if (!term.empty()) gold.terms.insert(std::move(term));
  }
  return gold;
}

FrequencyTable LoadFreqList(std::istream &in, const std::string &source) {
  FrequencyTable table;
  // Raw spellings seen so far; only exact repeats are errors, case variants
  // are merged after lowercasing.
  std::unordered_set<std::string> seen;
  int64_t declared_total = 0;
  int64_t sum = 0;
  int64_t max_count = 0;
  std::string raw;
  int64_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = StripCr(raw);
    if (IsBlank(line)) continue;
    std::vector<std::string> cols = Split(line, '\t');
    if (cols[0] == "#total") {
      if (cols.size() != 2 || !ParseCount(cols[1], &declared_total) ||
          declared_total <= 0) {
        throw ParseError(source, line_no, "malformed #total header");
      }
      continue;
    }
    if (line.front() == '#') continue;
    if (cols.size() != 2) {
      throw ParseError(source, line_no, "expected lemma<TAB>count");
    }
    if (!IsValidUtf8(cols[0])) {
      throw ParseError(source, line_no, "invalid UTF-8");
    }
    int64_t count = 0;
    if (!ParseCount(cols[1], &count) || count <= 0) {
      throw ParseError(source, line_no,
                       "count must be a positive integer, got '" + cols[1] + "'");
    }
    if (!seen.insert(cols[0]).second) {
      throw ParseError(source, line_no, "duplicate lemma '" + cols[0] + "'");
    }
    int64_t &slot = table.counts[ToLowerUtf8(cols[0])];
    slot += count;
    sum += count;
    max_count = std::max(max_count, slot);
  }
  table.total = declared_total > 0 ? declared_total : sum;
  if (table.total <= 0) {
    throw ParseError(source, line_no, "empty frequency list without #total");
  }
  if (table.total < max_count) {
    throw ParseError(source, line_no,
                     "#total " + std::to_string(table.total) +
                         " is below the largest count " +
                         std::to_string(max_count));
  }
  return table;
}

FrequencyTable FrequencyTableFromCorpus(const Corpus &corpus) {
  FrequencyTable table;
  for (const Sentence &s : corpus.sentences) {
    for (const Token &t : s.tokens) ++table.counts[t.lemma];
  }
  table.total = corpus.token_count;
  return table;
}

void ForEachOccurrence(
    const Corpus &corpus, const GoldTermSet &gold,
    const std::function<void(const LemmaSeq &, std::span<const Token>)>
        &visit) {
  if (gold.terms.empty()) return;
  size_t max_len = 0;
  std::unordered_set<LemmaSeq, LemmaSeqHash> lookup;
  for (const LemmaSeq &term : gold.terms) {
    max_len = std::max(max_len, term.size());
    lookup.insert(term);
  }
  LemmaSeq window;
  for (const Sentence &sentence : corpus.sentences) {
    const std::vector<Token> &tokens = sentence.tokens;
    for (size_t start = 0; start < tokens.size(); ++start) {
      window.clear();
      size_t end = std::min(tokens.size(), start + max_len);
      for (size_t i = start; i < end; ++i) {
        window.push_back(tokens[i].lemma);
        auto it = lookup.find(window);
        if (it != lookup.end()) {
          visit(*it, std::span<const Token>(tokens).subspan(start, i - start + 1));
        }
      }
    }
  }
}

double StatsReport::unigram_noun_share() const {
  int64_t total = 0;
  for (int64_t c : unigram_pos) total += c;
  if (total == 0) return 0.0;
  return static_cast<double>(unigram_pos[Index(UdTag::kNoun)] +
                             unigram_pos[Index(UdTag::kPropn)]) /
         static_cast<double>(total);
}

StatsReport Analyze(const Corpus &corpus, const GoldTermSet &gold) {
  StatsReport report;
  report.domain_name = corpus.domain_name;
  report.gold_terms = static_cast<int64_t>(gold.size());
  for (const LemmaSeq &term : gold.terms) {
    ++report.token_length[static_cast<int64_t>(term.size())];
    ++report.char_length[static_cast<int64_t>(Utf8Length(Join(term, " ")))];
  }

  std::unordered_map<LemmaSeq, int64_t, LemmaSeqHash> occurrences;
  ForEachOccurrence(corpus, gold,
                    [&](const LemmaSeq &term, std::span<const Token> window) {
                      ++occurrences[term];
                      ++report.first_pos[Index(window.front().upos)];
                      if (window.size() == 1) {
                        ++report.unigram_pos[Index(window.front().upos)];
                      } else {
                        ++report.last_pos[Index(window.back().upos)];
                      }
                      for (const Token &t : window) {
                        ++report.pos_in_term[Index(t.upos)];
                      }
                    });
  for (const LemmaSeq &term : gold.terms) {
    auto it = occurrences.find(term);
    int64_t n = it == occurrences.end() ? 0 : it->second;
    ++report.term_frequency[n];
    if (n > 0) ++report.gold_terms_found;
  }
  return report;
}

std::map<std::string, std::string> StatsTables(const StatsReport &report) {
  std::map<std::string, std::string> tables;
  tables["token_length"] = LengthTable("tokens", report.token_length);
  tables["char_length"] = LengthTable("chars", report.char_length);
  tables["term_frequency"] = LengthTable("occurrences", report.term_frequency);
  tables["unigram_pos"] = TagTable(report.unigram_pos);
  tables["first_pos"] = TagTable(report.first_pos);
  tables["last_pos"] = TagTable(report.last_pos);
  tables["pos_in_term"] = TagTable(report.pos_in_term);

  std::ostringstream summary;
  summary << "key\tvalue\n"
          << "domain\t" << report.domain_name << '\n'
          << "gold_terms\t" << report.gold_terms << '\n'
          << "gold_terms_found\t" << report.gold_terms_found << '\n'
          << "longest_term\t" << report.longest_term() << '\n'
          << "unigram_noun_share\t" << report.unigram_noun_share() << '\n';
  tables["summary"] = summary.str();
  return tables;
}

std::string StatsJson(const StatsReport &report) {
  nlohmann::json j;
  j["domain"] = report.domain_name;
  j["gold_terms"] = report.gold_terms;
  j["gold_terms_found"] = report.gold_terms_found;
  j["longest_term"] = report.longest_term();
  j["unigram_noun_share"] = report.unigram_noun_share();
  const auto lengths = [](const std::map<int64_t, int64_t> &h) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto &[k, v] : h) out[std::to_string(k)] = v;
    return out;
  };
  j["token_length"] = lengths(report.token_length);
  j["char_length"] = lengths(report.char_length);
  j["term_frequency"] = lengths(report.term_frequency);
  AddAll(report.unigram_pos, &j["unigram_pos"]);
  AddAll(report.first_pos, &j["first_pos"]);
  AddAll(report.last_pos, &j["last_pos"]);
  AddAll(report.pos_in_term, &j["pos_in_term"]);
  return j.dump(2);
}

}  // namespace termex
