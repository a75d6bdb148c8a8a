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


#include "termex/eval.h"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"
#include "termex/error.h"
#include "termex/manifest.h"

namespace termex {
namespace {

std::string Fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

EmbeddingStore ReadStoreFile(const std::string &path, bool text,
                         std::optional<uint32_t> dim) {
  std::ifstream in = OpenInput(path, !text);
  try {
    return text ? LoadTextStore(in, dim, path) : LoadStore(in, dim);
  } catch (const FormatError &e) {
    throw DataError(path + ": " + e.what());
  }
}

void ExperimentConfig::Validate() const {
  if (domains.empty()) throw UsageError("config lists no domains");
  std::unordered_set<std::string> names;
  for (const DomainPaths &d : domains) {
    if (d.name.empty()) throw UsageError("domain with an empty name");
    if (!names.insert(d.name).second) {
      throw UsageError("duplicate domain '" + d.name + "'");
    }
  }
  if (!test_domain.empty() && FindDomain(test_domain) == nullptr) {
    throw UsageError("test domain '" + test_domain + "' is not configured");
  }
  if (!(c > 0.0)) throw UsageError("c must be positive");
  filter.Validate();
}

const DomainPaths *ExperimentConfig::FindDomain(const std::string &name) const {
  for (const DomainPaths &d : domains) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

const DomainData &ExperimentData::domain(const std::string &name) const {
  for (const DomainData &d : domains) {
    if (d.name == name) return d;
  }
  throw UsageError("unknown domain '" + name + "'");
}

ExperimentData LoadExperimentData(const ExperimentConfig &cfg) {
  cfg.Validate();
  ExperimentData data;
  {
    std::ifstream in = OpenInput(cfg.general_freq);
    data.general_freq = LoadFreqList(in, cfg.general_freq);
  }
  data.general_store = ReadStoreFile(cfg.general_store, cfg.text_store, {});
  if (data.general_store.kind() != StoreKind::kGeneral) {
    throw DataError(cfg.general_store + ": expected a general store");
  }
  if (!cfg.stoplist.empty()) {
    std::ifstream in = OpenInput(cfg.stoplist);
    data.stoplist = LoadStoplist(in);
  }
  for (const DomainPaths &p : cfg.domains) {
    DomainData d;
    d.name = p.name;
    d.seed_term = p.seed_term;
    {
      std::ifstream in = OpenInput(p.corpus);
      d.corpus = ParseConllu(in, p.name, p.corpus);
    }
    {
      std::ifstream in = OpenInput(p.gold);
      d.gold = LoadGoldTerms(in, p.name, p.gold);
    }
    d.store = ReadStoreFile(p.store, cfg.text_store, data.general_store.dim());
    if (d.store.kind() != StoreKind::kDomain) {
      throw DataError(p.store + ": expected a domain store");
    }
    if (p.freq.empty()) {
      d.freq = FrequencyTableFromCorpus(d.corpus);
    } else {
      std::ifstream in = OpenInput(p.freq);
      d.freq = LoadFreqList(in, p.freq);
    }
    data.domains.push_back(std::move(d));
  }
  return data;
}

Score ScorePredictions(const std::set<LemmaSeq> &predicted,
                       const GoldTermSet &gold) {
  Score s;
  for (const LemmaSeq &term : predicted) {
    (gold.contains(term) ? s.tp : s.fp) += 1;
  }
  s.fn = static_cast<int64_t>(gold.size()) - s.tp;
  if (!predicted.empty()) {
    s.precision = static_cast<double>(s.tp) / static_cast<double>(predicted.size());
  }
  if (gold.size() > 0) {
    s.recall = static_cast<double>(s.tp) / static_cast<double>(gold.size());
  }
  if (s.precision + s.recall > 0.0) {
    s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

std::vector<PreparedDomain> PrepareDomains(const ExperimentData &data,
                                           const ExperimentConfig &cfg,
                                           const std::string &test_domain) {
  PatternSet patterns;
  if (cfg.source == CandidateSource::kPattern) {
    for (const DomainData &d : data.domains) {
      if (d.name == test_domain) continue;
      PatternSet mined = MinePatterns(d.corpus, d.gold);
      patterns.insert(mined.begin(), mined.end());
    }
  }
  std::vector<PreparedDomain> out;
  for (const DomainData &d : data.domains) {
    PreparedDomain p;
    p.name = d.name;
    p.candidates = cfg.source == CandidateSource::kPattern
                       ? GenerateCandidatesByPattern(d.corpus, patterns)
                       : GenerateCandidates(d.corpus, cfg.filter);
    if (d.name != test_domain) {
      p.candidates = LabelCandidates(std::move(p.candidates), d.gold);
    }
    FeatureInputs inputs{data.general_freq, d.freq,      data.general_store,
                         d.store,           data.stoplist, d.seed_term};
    p.features = Assemble(p.candidates, inputs);
    out.push_back(std::move(p));
  }
  return out;
}

EvalReport Evaluate(const ExperimentData &data,
                    std::span<const PreparedDomain> prepared,
                    const ExperimentConfig &cfg, const std::string &test_domain,
                    GroupMask groups, LinearModel *model_out,
                    std::vector<Prediction> *predictions_out) {
  std::vector<const FeatureMatrix *> train_parts;
  const PreparedDomain *test = nullptr;
  for (const PreparedDomain &p : prepared) {
    if (p.name == test_domain) {
      test = &p;
    } else {
      train_parts.push_back(&p.features);
    }
  }
  if (test == nullptr) {
    throw UsageError("test domain '" + test_domain + "' is not configured");
  }
  if (train_parts.empty()) throw UsageError("no training domains");
  const FeatureMatrix train = FeatureMatrix::Concat(train_parts);

  TrainOptions options;
  options.c = cfg.c;
  options.loss = cfg.loss;
  options.seed = cfg.seed;
  options.balanced = cfg.balanced;
  LinearModel model = Train(train, groups, options);
  std::vector<Prediction> predictions = Predict(model, test->features);

  std::set<LemmaSeq> predicted;
  for (size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i].label == Label::kTerm) {
      predicted.insert(test->features.keys()[i].lemmas);
    }
  }
  const GoldTermSet &gold = data.domain(test_domain).gold;

  EvalReport r;
  r.test_domain = test_domain;
  r.groups = groups.ToString();
  r.source = std::string(SourceName(cfg.source));
  r.score = ScorePredictions(predicted, gold);
  r.max_recall = MaxRecall(test->candidates, gold);
  r.predicted_count = static_cast<int64_t>(predicted.size());
  r.gold_count = static_cast<int64_t>(gold.size());
  r.train_rows = static_cast<int64_t>(train.rows());
  r.test_rows = static_cast<int64_t>(test->features.rows());
  r.columns = static_cast<int64_t>(model.weights.size());
  r.c = cfg.c;
  r.loss = std::string(LossName(cfg.loss));
  r.seed = cfg.seed;
  r.balanced = cfg.balanced;

  int64_t reachable = 0;
  for (const LemmaSeq &term : gold.terms) reachable += test->candidates.contains(term);
  if (r.score.tp > reachable || r.score.recall > r.max_recall) {
    throw std::logic_error("recall " + Fixed(r.score.recall) +
                           " exceeds max recall " + Fixed(r.max_recall) +
                           " on " + test_domain);
  }
  if (model_out != nullptr) *model_out = std::move(model);
  if (predictions_out != nullptr) *predictions_out = std::move(predictions);
  return r;
}

EvalReport RunExperiment(const ExperimentData &data,
                         const ExperimentConfig &cfg) {
  if (cfg.test_domain.empty()) throw UsageError("no test domain given");
  std::vector<PreparedDomain> prepared =
      PrepareDomains(data, cfg, cfg.test_domain);
  return Evaluate(data, prepared, cfg, cfg.test_domain, cfg.groups);
}

std::vector<EvalReport> Ablate(const ExperimentData &data,
                               const ExperimentConfig &cfg) {
  if (cfg.test_domain.empty()) throw UsageError("no test domain given");
  std::vector<PreparedDomain> prepared =
      PrepareDomains(data, cfg, cfg.test_domain);
  std::vector<EvalReport> rows;
  for (GroupMask mask : AblationOrder()) {
    rows.push_back(Evaluate(data, prepared, cfg, cfg.test_domain, mask));
  }
  return rows;
}

std::vector<EvalReport> RunAll(const ExperimentData &data,
                               const ExperimentConfig &cfg) {
  std::vector<EvalReport> rows;
  if (cfg.source == CandidateSource::kShallowFilter) {
    // Candidates do not depend on the test domain here, so prepare once.
    // Test-domain labels are never read: Predict ignores them.
    std::vector<PreparedDomain> prepared = PrepareDomains(data, cfg, "");
    for (const DomainData &d : data.domains) {
      rows.push_back(Evaluate(data, prepared, cfg, d.name, cfg.groups));
    }
    return rows;
  }
  for (const DomainData &d : data.domains) {
    std::vector<PreparedDomain> prepared = PrepareDomains(data, cfg, d.name);
    rows.push_back(Evaluate(data, prepared, cfg, d.name, cfg.groups));
  }
  return rows;
}

void WriteReportsTsv(std::span<const EvalReport> reports, std::ostream &out,
                     std::span<const std::string> preamble) {
  for (const std::string &line : preamble) out << "# " << line << '\n';
  out << "test_domain\tgroups\tsource\tprecision\trecall\tf1\ttp\tfp\tfn\t"
         "predicted\tgold\tmax_recall\ttrain_rows\ttest_rows\tcolumns\tc\t"
         "loss\tseed\tbalanced\n";
  for (const EvalReport &r : reports) {
    out << r.test_domain << '\t' << r.groups << '\t' << r.source << '\t'
        << Fixed(r.score.precision) << '\t' << Fixed(r.score.recall) << '\t'
        << Fixed(r.score.f1) << '\t' << r.score.tp << '\t' << r.score.fp
        << '\t' << r.score.fn << '\t' << r.predicted_count << '\t'
        << r.gold_count << '\t' << Fixed(r.max_recall) << '\t'
        << r.train_rows << '\t' << r.test_rows << '\t' << r.columns << '\t'
        << r.c << '\t' << r.loss << '\t' << r.seed << '\t'
        << (r.balanced ? "true" : "false") << '\n';
  }
}

std::string ReportsJson(std::span<const EvalReport> reports,
                        const std::string &manifest_json) {
  nlohmann::json rows = nlohmann::json::array();
  for (const EvalReport &r : reports) {
    rows.push_back({{"test_domain", r.test_domain},
                    {"groups", r.groups},
                    {"source", r.source},
                    {"precision", r.score.precision},
                    {"recall", r.score.recall},
                    {"f1", r.score.f1},
                    {"tp", r.score.tp},
                    {"fp", r.score.fp},
                    {"fn", r.score.fn},
                    {"predicted", r.predicted_count},
                    {"gold", r.gold_count},
                    {"max_recall", r.max_recall},
                    {"train_rows", r.train_rows},
                    {"test_rows", r.test_rows},
                    {"columns", r.columns},
                    {"c", r.c},
                    {"loss", r.loss},
                    {"seed", r.seed},
                    {"balanced", r.balanced}});
  }
  nlohmann::json doc;
  doc["reports"] = std::move(rows);
  doc["manifest"] = manifest_json.empty() ? nlohmann::json::object()
                                          : nlohmann::json::parse(manifest_json);
  return doc.dump(2) + "\n";
}

}  // namespace termex
