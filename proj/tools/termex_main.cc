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


// Command-line driver for the term extraction pipeline.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "termex/candidates.h"
#include "termex/corpus.h"
#include "termex/error.h"
#include "termex/eval.h"
#include "termex/features.h"
#include "termex/manifest.h"
#include "termex/model.h"
#include "termex/synthetic.h"
#include "termex/text_util.h"

namespace termex {
namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

std::string Absolute(const std::string &path) {
  if (path.empty()) return path;
  return fs::absolute(path).lexically_normal().string();
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

struct Globals {
  std::string config;
  std::string out_dir = "termex_out";
  bool text_store = false;
};

// Flags that override config values. Each is applied only when given.
struct Flags {
  std::string domain;
  std::string test_domain;
  int max_len = 11;
  int min_chars = 3;
  bool permissive = false;
  std::string source = "shallow";
  std::string groups = "C,P,S";
  double c = 1.0;
  std::string loss = "hinge";
  uint64_t seed = 1;
  bool balanced = false;
  std::string stoplist;
  std::string seed_term;

  // Flag name -> its options across subcommands.
  std::map<std::string, std::vector<CLI::Option *>> options;

  void Track(const std::string &name, CLI::Option *opt) {
    options[name].push_back(opt);
  }
  bool Given(const std::string &name) const {
    auto it = options.find(name);
    if (it == options.end()) return false;
    for (const CLI::Option *opt : it->second) {
      if (opt->count() > 0) return true;
    }
    return false;
  }
};

void AddFilterFlags(CLI::App *sub, Flags &f) {
  f.Track("max-len", sub->add_option("--max-len", f.max_len,
                                     "Longest candidate in tokens (default 11)"));
  f.Track("min-chars",
          sub->add_option("--min-chars", f.min_chars,
                          "Candidates must be longer than this many "
                          "characters (default 3)"));
  f.Track("permissive-adv-adp",
          sub->add_flag("--permissive-adv-adp", f.permissive,
                        "Allow ADP and inner ADV tokens"));
  f.Track("source", sub->add_option("--source", f.source,
                                    "Candidate source: shallow or pattern"));
}

void AddTrainFlags(CLI::App *sub, Flags &f) {
  f.Track("c", sub->add_option("--c", f.c, "Regularization constant (default 1)"));
  f.Track("loss", sub->add_option("--loss", f.loss, "hinge or logistic"));
  f.Track("groups", sub->add_option("--groups", f.groups,
                                    "Feature groups, e.g. C,P,S or C&S"));
  f.Track("seed", sub->add_option("--seed", f.seed, "Solver seed (default 1)"));
  f.Track("balanced", sub->add_flag("--balanced", f.balanced,
                                    "Weight classes by inverse frequency"));
}

void AddTestDomainFlag(CLI::App *sub, Flags &f) {
  f.Track("test-domain",
          sub->add_option("--test-domain", f.test_domain, "Held-out domain"));
}

void ApplyFlags(const Flags &f, ExperimentConfig &cfg) {
  if (f.Given("test-domain")) cfg.test_domain = f.test_domain;
  if (f.Given("max-len")) cfg.filter.max_len = f.max_len;
  if (f.Given("min-chars")) cfg.filter.min_chars = f.min_chars;
  if (f.Given("permissive-adv-adp")) {
    cfg.filter.exclude_adp_adv_internal = !f.permissive;
  }
  if (f.Given("source")) cfg.source = ParseSource(f.source);
  if (f.Given("groups")) cfg.groups = GroupMask::Parse(f.groups);
  if (f.Given("c")) cfg.c = f.c;
  if (f.Given("loss")) cfg.loss = ParseLoss(f.loss);
  if (f.Given("seed")) cfg.seed = f.seed;
  if (f.Given("balanced")) cfg.balanced = f.balanced;
  if (f.Given("stoplist")) cfg.stoplist = Absolute(f.stoplist);
}

// Subcommand context: resolved settings plus the manifest echoed into
// every output.
class Run {
 public:
  Run(std::string subcommand, const Globals &globals, const Flags &flags)
      : globals_(globals), flags_(flags) {
    manifest_.subcommand = std::move(subcommand);
    if (!globals.config.empty()) {
      manifest_.config_path = Absolute(globals.config);
      cfg_ = LoadConfig(manifest_.config_path);
    }
    ApplyFlags(flags, cfg_);
    if (globals.text_store) cfg_.text_store = true;
    cfg_.filter.Validate();
    if (!(cfg_.c > 0.0)) throw UsageError("--c must be positive");
  }

  bool has_config() const { return !manifest_.config_path.empty(); }
  ExperimentConfig &cfg() { return cfg_; }
  RunManifest &manifest() { return manifest_; }

  void RequireConfig() const {
    if (!has_config()) {
      throw UsageError(manifest_.subcommand + " needs --config");
    }
  }

  // Fills the manifest from the settled configuration. Call once, before
  // any computation.
  void Seal() {
    if (has_config()) {
      cfg_.Validate();
    }
    manifest_.AddConfigInputs(cfg_);
    std::erase_if(manifest_.inputs,
                  [](const auto &kv) { return kv.second.empty(); });
    manifest_.settings["text_store"] = cfg_.text_store ? "true" : "false";
    json_ = manifest_.ToJson();
    preamble_ = {manifest_.PreambleLine()};
  }

  void AddInput(const std::string &role, const std::string &path) {
    manifest_.inputs[role] = Absolute(path);
  }

  const std::string &manifest_json() const { return json_; }
  const std::vector<std::string> &preamble() const { return preamble_; }

  void Write(const fs::path &relative, const std::string &contents) const {
    WriteFileAtomic(fs::path(globals_.out_dir) / relative, contents);
  }

  // Data of the selected domains only; empty selection means all.
  std::vector<const DomainPaths *> SelectedDomains() const {
    std::vector<const DomainPaths *> out;
    for (const DomainPaths &d : cfg_.domains) {
      if (!flags_.Given("domain") || d.name == flags_.domain) out.push_back(&d);
    }
    if (out.empty()) throw UsageError("unknown domain '" + flags_.domain + "'");
    return out;
  }

 private:
  const Globals &globals_;
  const Flags &flags_;
  ExperimentConfig cfg_;
  RunManifest manifest_;
  std::string json_;
  std::vector<std::string> preamble_;
};

std::string WithManifest(const std::string &json_text,
                         const std::string &manifest_json) {
  nlohmann::json doc = nlohmann::json::parse(json_text);
  doc["manifest"] = nlohmann::json::parse(manifest_json);
  return doc.dump(2) + "\n";
}

std::string CommentPreamble(const Run &run) {
  std::string out;
  for (const std::string &line : run.preamble()) out += "# " + line + "\n";
  return out;
}

Corpus ReadCorpus(const std::string &path, const std::string &name) {
  std::ifstream in = OpenInput(path);
  return ParseConllu(in, name, path);
}

GoldTermSet ReadGold(const std::string &path, const std::string &name) {
  std::ifstream in = OpenInput(path);
  return LoadGoldTerms(in, name, path);
}

FrequencyTable ReadFreq(const std::string &path) {
  std::ifstream in = OpenInput(path);
  return LoadFreqList(in, path);
}

// One pattern per line: UD tags separated by spaces. '#' starts a comment.
PatternSet ReadPatterns(const std::string &path) {
  std::ifstream in = OpenInput(path);
  PatternSet patterns;
  std::string line;
  int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = StripCr(line);
    if (text.empty() || text.front() == '#') continue;
    PosSeq seq;
    for (const std::string &name : SplitNonEmpty(text, ' ')) {
      std::optional<UdTag> tag = ParseUdTag(name);
      if (!tag) throw ParseError(path, line_no, "unknown UD tag '" + name + "'");
      seq.push_back(*tag);
    }
    if (!seq.empty()) patterns.insert(std::move(seq));
  }
  if (patterns.empty()) throw DataError(path + ": no patterns");
  return patterns;
}

std::string PatternsText(const PatternSet &patterns) {
  std::string out;
  for (const PosSeq &seq : patterns) {
    for (size_t i = 0; i < seq.size(); ++i) {
      if (i > 0) out += ' ';
      out += UdTagName(seq[i]);
    }
    out += '\n';
  }
  return out;
}

std::string ReportsTsv(const Run &run, std::span<const EvalReport> reports) {
  std::ostringstream out;
  WriteReportsTsv(reports, out, run.preamble());
  return out.str();
}

std::string PredictionsTsv(const Run &run, const FeatureMatrix &x,
                           std::span<const Prediction> predictions) {
  std::ostringstream out;
  out << CommentPreamble(run);
  out << "domain\tlemmas\tmargin\tlabel\n";
  for (size_t i = 0; i < predictions.size(); ++i) {
    const RowKey &key = x.keys()[i];
    out << key.domain << '\t' << Join(key.lemmas, " ") << '\t'
        << FormatDouble(predictions[i].margin) << '\t'
        << LabelName(predictions[i].label) << '\n';
  }
  return out.str();
}

std::string ModelBytes(const LinearModel &model) {
  std::ostringstream out(std::ios::binary);
  SaveModel(model, out);
  return out.str();
}

void PrintReports(std::span<const EvalReport> reports) {
  for (const EvalReport &r : reports) {
    std::printf("%s\t%s\tP %.4f\tR %.4f\tF1 %.4f\tmax_recall %.4f\n",
                r.test_domain.c_str(), r.groups.c_str(), r.score.precision,
                r.score.recall, r.score.f1, r.max_recall);
  }
}

// ---------------------------------------------------------------- stats

struct StatsArgs {
  std::string corpus;
  std::string gold;
};

void RunStats(Run &run, const StatsArgs &args, const Flags &flags) {
  std::vector<DomainPaths> domains;
  if (run.has_config()) {
    for (const DomainPaths *d : run.SelectedDomains()) domains.push_back(*d);
  } else {
    if (args.corpus.empty() || args.gold.empty()) {
      throw UsageError("stats needs --corpus and --gold, or --config");
    }
    DomainPaths d;
    d.name = flags.Given("domain") ? flags.domain : "corpus";
    d.corpus = args.corpus;
    d.gold = args.gold;
    domains.push_back(d);
    run.AddInput("corpus", args.corpus);
    run.AddInput("gold", args.gold);
  }
  run.Seal();
  for (const DomainPaths &d : domains) {
    StatsReport report = Analyze(ReadCorpus(d.corpus, d.name),
                                 ReadGold(d.gold, d.name));
    for (const auto &[name, table] : StatsTables(report)) {
      run.Write(fs::path("stats") / d.name / (name + ".tsv"),
                CommentPreamble(run) + table);
    }
    run.Write(fs::path("stats") / d.name / "stats.json",
              WithManifest(StatsJson(report), run.manifest_json()));
    std::printf("%s\tgold %lld\tfound %lld\tlongest %lld\n", d.name.c_str(),
                static_cast<long long>(report.gold_terms),
                static_cast<long long>(report.gold_terms_found),
                static_cast<long long>(report.longest_term()));
  }
}

// ----------------------------------------------------------- candidates

struct CandidatesArgs {
  std::string corpus;
  std::string gold;
  std::string patterns;
};

struct CandidateSummary {
  std::string domain;
  size_t candidates = 0;
  int64_t terms = 0;
  size_t gold = 0;
  double max_recall = 0.0;
};

void RunCandidates(Run &run, const CandidatesArgs &args, const Flags &flags) {
  const ExperimentConfig &cfg = run.cfg();
  const bool pattern = cfg.source == CandidateSource::kPattern;

  struct Job {
    std::string name;
    std::string corpus;
    std::string gold;
  };
  std::vector<Job> jobs;
  if (run.has_config()) {
    for (const DomainPaths *d : run.SelectedDomains()) {
      jobs.push_back({d->name, d->corpus, d->gold});
    }
  } else {
    if (args.corpus.empty()) {
      throw UsageError("candidates needs --corpus or --config");
    }
    jobs.push_back({flags.Given("domain") ? flags.domain : "corpus",
                    args.corpus, args.gold});
    run.AddInput("corpus", args.corpus);
    if (!args.gold.empty()) run.AddInput("gold", args.gold);
  }
  if (pattern && !args.patterns.empty()) {
    run.AddInput("patterns", args.patterns);
  } else if (pattern && !run.has_config()) {
    throw UsageError("--source pattern needs --patterns or --config");
  }
  run.Seal();

  // Patterns for a domain come from the gold of every other configured
  // domain unless a pattern file is given.
  std::map<std::string, PatternSet> mined;
  if (pattern && args.patterns.empty()) {
    for (const DomainPaths &d : cfg.domains) {
      mined[d.name] =
          MinePatterns(ReadCorpus(d.corpus, d.name), ReadGold(d.gold, d.name));
    }
  }
  const PatternSet given =
      pattern && !args.patterns.empty() ? ReadPatterns(args.patterns)
                                        : PatternSet{};

  std::vector<CandidateSummary> summary;
  for (const Job &job : jobs) {
    Corpus corpus = ReadCorpus(job.corpus, job.name);
    CandidateSet cands;
    if (pattern) {
      PatternSet patterns = given;
      if (args.patterns.empty()) {
        for (const auto &[name, set] : mined) {
          if (name != job.name) patterns.insert(set.begin(), set.end());
        }
        run.Write(fs::path("candidates") / (job.name + ".patterns.txt"),
                  CommentPreamble(run) + PatternsText(patterns));
      }
      cands = GenerateCandidatesByPattern(corpus, patterns);
    } else {
      cands = GenerateCandidates(corpus, cfg.filter);
    }
    CandidateSummary row;
    row.domain = job.name;
    if (!job.gold.empty()) {
      GoldTermSet gold = ReadGold(job.gold, job.name);
      cands = LabelCandidates(std::move(cands), gold);
      row.terms = cands.CountLabel(Label::kTerm);
      row.gold = gold.size();
      row.max_recall = MaxRecall(cands, gold);
    }
    row.candidates = cands.size();
    std::ostringstream out;
    WriteCandidatesTsv(cands, out, run.preamble());
    run.Write(fs::path("candidates") / (job.name + ".tsv"), out.str());
    summary.push_back(row);
    std::printf("%s\tcandidates %zu\tterms %lld\tmax_recall %.4f\n",
                row.domain.c_str(), row.candidates,
                static_cast<long long>(row.terms), row.max_recall);
  }
  std::ostringstream out;
  out << CommentPreamble(run)
      << "domain\tcandidates\tterms\tgold\tmax_recall\n";
  for (const CandidateSummary &r : summary) {
    char recall[32];
    std::snprintf(recall, sizeof(recall), "%.6f", r.max_recall);
    out << r.domain << '\t' << r.candidates << '\t' << r.terms << '\t'
        << r.gold << '\t' << recall << '\n';
  }
  run.Write(fs::path("candidates") / "summary.tsv", out.str());
}

// ------------------------------------------------------------ featurize

struct FeaturizeArgs {
  std::string candidates;
  std::string domain_store;
  std::string general_store;
  std::string general_freq;
  std::string domain_freq;
  std::string corpus;
  bool tsv = false;
};

void WriteFeatures(const Run &run, const std::string &name,
                   const FeatureMatrix &m, bool tsv) {
  std::ostringstream bin(std::ios::binary);
  SaveFeatureMatrix(m, bin, run.manifest_json());
  run.Write(fs::path("features") / (name + ".texf"), bin.str());
  if (tsv) {
    std::ostringstream text;
    WriteFeatureTsv(m, text, run.preamble());
    run.Write(fs::path("features") / (name + ".tsv"), text.str());
  }
  std::printf("%s\trows %zu\tcols %zu\n", name.c_str(), m.rows(), m.cols());
}

void RunFeaturize(Run &run, const FeaturizeArgs &args, const Flags &flags) {
  ExperimentConfig &cfg = run.cfg();
  if (run.has_config()) {
    if (flags.Given("seed-term")) {
      if (!flags.Given("domain")) {
        throw UsageError("--seed-term with --config needs --domain");
      }
      for (DomainPaths &d : cfg.domains) {
        if (d.name == flags.domain) d.seed_term = flags.seed_term;
      }
    }
    std::vector<const DomainPaths *> selected = run.SelectedDomains();
    run.Seal();
    ExperimentData data = LoadExperimentData(cfg);
    std::vector<PreparedDomain> prepared =
        PrepareDomains(data, cfg, cfg.test_domain);
    for (const PreparedDomain &p : prepared) {
      for (const DomainPaths *d : selected) {
        if (d->name == p.name) WriteFeatures(run, p.name, p.features, args.tsv);
      }
    }
    return;
  }

  if (args.candidates.empty() || args.domain_store.empty() ||
      args.general_store.empty() || args.general_freq.empty() ||
      !flags.Given("seed-term")) {
    throw UsageError(
        "featurize needs --candidates, --domain-store, --general-store, "
        "--general-freq and --seed-term, or --config");
  }
  if (args.domain_freq.empty() == args.corpus.empty()) {
    throw UsageError("featurize needs exactly one of --domain-freq or --corpus");
  }
  run.AddInput("candidates", args.candidates);
  run.AddInput("domain_store", args.domain_store);
  run.AddInput("general_store", args.general_store);
  run.AddInput("general_freq", args.general_freq);
  if (!args.domain_freq.empty()) run.AddInput("domain_freq", args.domain_freq);
  if (!args.corpus.empty()) run.AddInput("corpus", args.corpus);
  run.manifest().settings["seed_term"] = flags.seed_term;
  run.Seal();

  CandidateSet cands;
  {
    std::ifstream in = OpenInput(args.candidates);
    cands = ReadCandidatesTsv(in, args.candidates);
  }
  const std::string name = flags.Given("domain") ? flags.domain
                           : cands.domain_name().empty() ? "corpus"
                                                         : cands.domain_name();
  EmbeddingStore general =
      ReadStoreFile(args.general_store, cfg.text_store, std::nullopt);
  if (general.kind() != StoreKind::kGeneral) {
    throw DataError(args.general_store + ": expected a general store");
  }
  EmbeddingStore domain =
      ReadStoreFile(args.domain_store, cfg.text_store, general.dim());
  if (domain.kind() != StoreKind::kDomain) {
    throw DataError(args.domain_store + ": expected a domain store");
  }
  FrequencyTable general_freq = ReadFreq(args.general_freq);
  FrequencyTable domain_freq =
      args.corpus.empty() ? ReadFreq(args.domain_freq)
                          : FrequencyTableFromCorpus(ReadCorpus(args.corpus, name));
  Stoplist stoplist;
  if (!cfg.stoplist.empty()) {
    std::ifstream in = OpenInput(cfg.stoplist);
    stoplist = LoadStoplist(in);
  }
  FeatureInputs inputs{general_freq, domain_freq, general,
                       domain,       stoplist,    flags.seed_term};
  WriteFeatures(run, name, Assemble(cands, inputs), args.tsv);
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::vector<std::string> features;
};

FeatureMatrix ReadFeatures(const std::string &path) {
  std::ifstream in = OpenInput(path, true);
  try {
    return LoadFeatureMatrix(in);
  } catch (const FormatError &e) {
    throw DataError(path + ": " + e.what());
  }
}

TrainOptions OptionsFrom(const ExperimentConfig &cfg) {
  TrainOptions options;
  options.c = cfg.c;
  options.loss = cfg.loss;
  options.seed = cfg.seed;
  options.balanced = cfg.balanced;
  return options;
}

void RunTrain(Run &run, const TrainArgs &args) {
  const ExperimentConfig &cfg = run.cfg();
  std::vector<FeatureMatrix> parts;
  if (!args.features.empty()) {
    for (size_t i = 0; i < args.features.size(); ++i) {
      run.AddInput("features." + std::to_string(i), args.features[i]);
    }
    run.Seal();
    for (const std::string &path : args.features) {
      parts.push_back(ReadFeatures(path));
    }
  } else {
    run.RequireConfig();
    run.Seal();
    ExperimentData data = LoadExperimentData(cfg);
    for (PreparedDomain &p : PrepareDomains(data, cfg, cfg.test_domain)) {
      if (p.name != cfg.test_domain) parts.push_back(std::move(p.features));
    }
  }
  std::vector<const FeatureMatrix *> ptrs;
  for (const FeatureMatrix &m : parts) ptrs.push_back(&m);
  const FeatureMatrix train = FeatureMatrix::Concat(ptrs);

  std::vector<double> log;
  LinearModel model = Train(train, cfg.groups, OptionsFrom(cfg), &log);
  model.provenance = run.manifest_json();
  run.Write("model.texm", ModelBytes(model));

  std::ostringstream out;
  out << CommentPreamble(run) << "epoch\tobjective\n";
  for (size_t i = 0; i < log.size(); ++i) {
    out << i + 1 << '\t' << FormatDouble(log[i]) << '\n';
  }
  run.Write("train_log.tsv", out.str());
  std::printf("trained on %zu rows, %zu columns, %zu epochs\n", train.rows(),
              model.weights.size(), log.size());
}

// -------------------------------------------------------------- predict

struct PredictArgs {
  std::string model;
  std::string features;
};

void RunPredict(Run &run, const PredictArgs &args) {
  const ExperimentConfig &cfg = run.cfg();
  if (args.model.empty()) throw UsageError("predict needs --model");
  run.AddInput("model", args.model);
  if (!args.features.empty()) {
    run.AddInput("features", args.features);
  } else {
    run.RequireConfig();
    if (cfg.test_domain.empty()) {
      throw UsageError("predict needs --features or --test-domain");
    }
  }
  run.Seal();

  LinearModel model;
  {
    std::ifstream in = OpenInput(args.model, true);
    try {
      model = LoadModel(in);
    } catch (const FormatError &e) {
      throw DataError(args.model + ": " + e.what());
    }
  }
  FeatureMatrix x(FeatureSchema(1));
  if (!args.features.empty()) {
    x = ReadFeatures(args.features);
  } else {
    ExperimentData data = LoadExperimentData(cfg);
    for (PreparedDomain &p : PrepareDomains(data, cfg, cfg.test_domain)) {
      if (p.name == cfg.test_domain) x = std::move(p.features);
    }
  }
  std::vector<Prediction> predictions = Predict(model, x);
  run.Write("predictions.tsv", PredictionsTsv(run, x, predictions));
  size_t terms = 0;
  for (const Prediction &p : predictions) terms += p.label == Label::kTerm;
  std::printf("%zu of %zu candidates predicted as terms\n", terms,
              predictions.size());
}

// ---------------------------------------------------- eval, ablate, all

void RunEval(Run &run) {
  run.RequireConfig();
  const ExperimentConfig &cfg = run.cfg();
  if (cfg.test_domain.empty()) throw UsageError("eval needs --test-domain");
  run.Seal();
  ExperimentData data = LoadExperimentData(cfg);
  std::vector<PreparedDomain> prepared =
      PrepareDomains(data, cfg, cfg.test_domain);
  LinearModel model;
  std::vector<Prediction> predictions;
  std::vector<EvalReport> reports = {Evaluate(data, prepared, cfg,
                                              cfg.test_domain, cfg.groups,
                                              &model, &predictions)};
  model.provenance = run.manifest_json();
  for (const PreparedDomain &p : prepared) {
    if (p.name == cfg.test_domain) {
      run.Write("predictions.tsv", PredictionsTsv(run, p.features, predictions));
    }
  }
  run.Write("model.texm", ModelBytes(model));
  run.Write("eval.tsv", ReportsTsv(run, reports));
  run.Write("eval.json", ReportsJson(reports, run.manifest_json()));
  PrintReports(reports);
}

void RunAblate(Run &run) {
  run.RequireConfig();
  const ExperimentConfig &cfg = run.cfg();
  if (cfg.test_domain.empty()) throw UsageError("ablate needs --test-domain");
  run.Seal();
  ExperimentData data = LoadExperimentData(cfg);
  std::vector<EvalReport> reports = Ablate(data, cfg);
  run.Write("ablation.tsv", ReportsTsv(run, reports));
  run.Write("ablation.json", ReportsJson(reports, run.manifest_json()));
  PrintReports(reports);
}

void RunRunAll(Run &run) {
  run.RequireConfig();
  run.Seal();
  const ExperimentConfig &cfg = run.cfg();
  ExperimentData data = LoadExperimentData(cfg);
  std::vector<EvalReport> reports = RunAll(data, cfg);
  run.Write("run_all.tsv", ReportsTsv(run, reports));
  run.Write("run_all.json", ReportsJson(reports, run.manifest_json()));
  PrintReports(reports);
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  SyntheticOptions options;
};

void RunSynth(const Globals &globals, const SynthArgs &args) {
  if (args.options.dim == 0) throw UsageError("--dim must be positive");
  if (args.options.sentences_per_domain < 1) {
    throw UsageError("--sentences must be positive");
  }
  SyntheticDataset ds = MakeSyntheticDataset(args.options);
  const std::string path =
      WriteSyntheticDataset(ds, globals.out_dir, globals.text_store);
  std::printf("%s\n", path.c_str());
}

int Main(int argc, char **argv) {
  CLI::App app{"termex: supervised terminology extraction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Globals globals;
  app.add_option("--config", globals.config, "JSON experiment manifest");
  app.add_option("--out-dir", globals.out_dir,
                 "Output directory (default termex_out)");
  app.add_flag("--text-store", globals.text_store,
               "Embedding stores are in the text form");

  Flags flags;
  std::function<void()> action;

  CLI::App *stats = app.add_subcommand("stats", "Gold term statistics");
  StatsArgs stats_args;
  stats->add_option("--corpus", stats_args.corpus, "CoNLL-U corpus");
  stats->add_option("--gold", stats_args.gold, "Gold term list");

  CLI::App *cands = app.add_subcommand("candidates", "Generate candidates");
  CandidatesArgs cand_args;
  cands->add_option("--corpus", cand_args.corpus, "CoNLL-U corpus");
  cands->add_option("--gold", cand_args.gold, "Gold terms for labels");
  cands->add_option("--patterns", cand_args.patterns,
                    "POS patterns, one per line");
  AddFilterFlags(cands, flags);

  CLI::App *feat = app.add_subcommand("featurize", "Assemble feature rows");
  FeaturizeArgs feat_args;
  feat->add_option("--candidates", feat_args.candidates, "Candidate TSV");
  feat->add_option("--domain-store", feat_args.domain_store,
                   "Domain embedding store");
  feat->add_option("--general-store", feat_args.general_store,
                   "General embedding store");
  feat->add_option("--general-freq", feat_args.general_freq,
                   "General frequency list");
  feat->add_option("--domain-freq", feat_args.domain_freq,
                   "Domain frequency list");
  feat->add_option("--corpus", feat_args.corpus,
                   "Count domain frequencies from this corpus");
  flags.Track("seed-term", feat->add_option("--seed-term", flags.seed_term,
                                            "Domain seed term"));
  flags.Track("stoplist",
              feat->add_option("--stoplist", flags.stoplist, "Stoplist file"));
  feat->add_flag("--tsv", feat_args.tsv, "Also write a debug TSV");
  AddFilterFlags(feat, flags);
  AddTestDomainFlag(feat, flags);

  CLI::App *train = app.add_subcommand("train", "Train a linear model");
  TrainArgs train_args;
  train->add_option("--features", train_args.features,
                    "Labelled feature matrices (TEXF1)");
  AddFilterFlags(train, flags);
  AddTrainFlags(train, flags);
  AddTestDomainFlag(train, flags);

  CLI::App *predict = app.add_subcommand("predict", "Apply a model");
  PredictArgs predict_args;
  predict->add_option("--model", predict_args.model, "Model file (TEXM1)");
  predict->add_option("--features", predict_args.features,
                      "Feature matrix (TEXF1)");
  AddFilterFlags(predict, flags);
  AddTestDomainFlag(predict, flags);

  CLI::App *eval = app.add_subcommand("eval", "Train and score one split");
  AddFilterFlags(eval, flags);
  AddTrainFlags(eval, flags);
  AddTestDomainFlag(eval, flags);

  CLI::App *ablate =
      app.add_subcommand("ablate", "Score all feature group subsets");
  AddFilterFlags(ablate, flags);
  AddTrainFlags(ablate, flags);
  AddTestDomainFlag(ablate, flags);

  CLI::App *all = app.add_subcommand("run-all", "Hold out each domain in turn");
  AddFilterFlags(all, flags);
  AddTrainFlags(all, flags);

  CLI::App *synth = app.add_subcommand("synth", "Write a synthetic dataset");
  SynthArgs synth_args;
  synth->add_option("--dim", synth_args.options.dim, "Embedding dimension");
  synth->add_option("--sentences", synth_args.options.sentences_per_domain,
                    "Sentences per domain");
  synth->add_option("--seed", synth_args.options.seed, "Generator seed");

  for (CLI::App *sub : {stats, cands, feat}) {
    flags.Track("domain", sub->add_option("--domain", flags.domain,
                                       "Domain name or config domain"));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*synth) {
      RunSynth(globals, synth_args);
      return kExitOk;
    }
    CLI::App *chosen = app.get_subcommands().front();
    Run run(chosen->get_name(), globals, flags);
    if (*stats) RunStats(run, stats_args, flags);
    if (*cands) RunCandidates(run, cand_args, flags);
    if (*feat) RunFeaturize(run, feat_args, flags);
    if (*train) RunTrain(run, train_args);
    if (*predict) RunPredict(run, predict_args);
    if (*eval) RunEval(run);
    if (*ablate) RunAblate(run);
    if (*all) RunRunAll(run);
  } catch (const UsageError &e) {
    std::cerr << "termex: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError &e) {
    std::cerr << "termex: " << e.what() << '\n';
    return kExitData;
  } catch (const fs::filesystem_error &e) {
    std::cerr << "termex: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception &e) {
    std::cerr << "termex: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace
}  // namespace termex

int main(int argc, char **argv) { return termex::Main(argc, argv); }
