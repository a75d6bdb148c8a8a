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


// Leave-one-domain-out experiments, scoring and ablation.

#ifndef TERMEX_EVAL_H_
#define TERMEX_EVAL_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "termex/candidates.h"
#include "termex/corpus.h"
#include "termex/embed_store.h"
#include "termex/features.h"
#include "termex/model.h"

namespace termex {

struct DomainPaths {
  std::string name;
  std::string corpus;  // CoNLL-U
  std::string gold;    // one term per line
  std::string seed_term;
  std::string store;  // domain embedding store
  // Domain frequency list; empty means count the corpus.
  std::string freq;
};

struct ExperimentConfig {
  std::vector<DomainPaths> domains;
  std::string general_store;
  std::string general_freq;
  std::string stoplist;  // empty: built-in list

  std::string test_domain;
  GroupMask groups = GroupMask::All();
  CandidateSource source = CandidateSource::kShallowFilter;
  FilterConfig filter;
  double c = 1.0;
  Loss loss = Loss::kHinge;
  uint64_t seed = 1;
  bool balanced = false;
  // Stores are in the text form instead of EMBS1.
  bool text_store = false;

  // Throws UsageError on duplicate or missing domain names, an unknown
  // test domain, c <= 0 or a bad filter.
  void Validate() const;
  const DomainPaths *FindDomain(const std::string &name) const;
};

// Everything an experiment reads, already parsed.
struct DomainData {
  std::string name;
  Corpus corpus;
  GoldTermSet gold;
  std::string seed_term;
  EmbeddingStore store{StoreKind::kDomain, 1};
  FrequencyTable freq;
};

struct ExperimentData {
  std::vector<DomainData> domains;
  EmbeddingStore general_store{StoreKind::kGeneral, 1};
  FrequencyTable general_freq;
  Stoplist stoplist;

  const DomainData &domain(const std::string &name) const;
};

// Loads every path in `cfg`. Relative paths are taken as given.
// EMBS1 or, when `text`, the debug text form. Format problems are reported
// as DataError naming the file.
EmbeddingStore ReadStoreFile(const std::string &path, bool text,
                             std::optional<uint32_t> dim = std::nullopt);

ExperimentData LoadExperimentData(const ExperimentConfig &cfg);

struct Score {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

Score ScorePredictions(const std::set<LemmaSeq> &predicted,
                       const GoldTermSet &gold);

struct EvalReport {
  std::string test_domain;
  std::string groups;
  std::string source;
  Score score;
  double max_recall = 0.0;
  int64_t predicted_count = 0;
  int64_t gold_count = 0;
  int64_t train_rows = 0;
  int64_t test_rows = 0;
  int64_t columns = 0;
  double c = 1.0;
  std::string loss;
  uint64_t seed = 0;
  bool balanced = false;
};

// Candidates and features for one domain. Labels are attached only when
// the domain is used for training.
struct PreparedDomain {
  std::string name;
  CandidateSet candidates;
  FeatureMatrix features{FeatureSchema(1)};
};

// Builds candidates and features for every domain as seen from a run that
// tests on `test_domain`. With the pattern source, patterns are mined from
// the gold sets of the other domains only.
std::vector<PreparedDomain> PrepareDomains(const ExperimentData &data,
                                           const ExperimentConfig &cfg,
                                           const std::string &test_domain);

// Trains on every prepared domain except the test domain and scores the
// test domain against its full gold set.
EvalReport Evaluate(const ExperimentData &data,
                    std::span<const PreparedDomain> prepared,
                    const ExperimentConfig &cfg, const std::string &test_domain,
                    GroupMask groups, LinearModel *model_out = nullptr,
                    std::vector<Prediction> *predictions_out = nullptr);

EvalReport RunExperiment(const ExperimentData &data,
                         const ExperimentConfig &cfg);

// One row per nonempty feature-group subset, in AblationOrder().
std::vector<EvalReport> Ablate(const ExperimentData &data,
                               const ExperimentConfig &cfg);

// One row per domain, each used once as the test domain.
std::vector<EvalReport> RunAll(const ExperimentData &data,
                               const ExperimentConfig &cfg);

void WriteReportsTsv(std::span<const EvalReport> reports, std::ostream &out,
                     std::span<const std::string> preamble = {});
std::string ReportsJson(std::span<const EvalReport> reports,
                        const std::string &manifest_json);

}  // namespace termex

#endif  // TERMEX_EVAL_H_
