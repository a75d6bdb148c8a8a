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

#include "tests/oracles.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace termex::testing {
namespace {

bool In(const std::vector<UdTag> &set, UdTag t) {
  return std::find(set.begin(), set.end(), t) != set.end();
}

size_t CodePoints(const std::string &s) {
  size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

// Rules transcribed independently of PassesFilter.
bool OracleAdmits(const PosSeq &pos, const LemmaSeq &lemmas,
                  const FilterConfig &cfg) {
  std::string joined;
  for (size_t i = 0; i < lemmas.size(); ++i) {
    joined += (i ? " " : "") + lemmas[i];
  }
  const std::vector<UdTag> forbidden = [&] {
    std::vector<UdTag> v;
    for (UdTag t : kAllUdTags) {
      if (cfg.forbidden_anywhere.contains(t)) v.push_back(t);
    }
    return v;
  }();
  const bool rule1 = CodePoints(joined) > static_cast<size_t>(cfg.min_chars);
  const bool rule2 =
      pos.size() != 1 || cfg.allowed_unigram.contains(pos[0]);
  const bool rule3 = pos.size() == 1 || cfg.allowed_last.contains(pos.back());
  const bool rule4 = cfg.allowed_first.contains(pos[0]);
  bool rule5 = std::none_of(pos.begin(), pos.end(),
                            [&](UdTag t) { return In(forbidden, t); });
  if (cfg.exclude_adp_adv_internal) {
    if (In(pos, UdTag::kAdp)) rule5 = false;
    if (std::find(pos.begin() + 1, pos.end(), UdTag::kAdv) != pos.end()) {
      rule5 = false;
    }
  }
  bool rule6 = true;
  for (char c : cfg.forbidden_chars) {
    if (joined.find(c) != std::string::npos) rule6 = false;
  }
  return rule1 && rule2 && rule3 && rule4 && rule5 && rule6;
}

template <typename Admit>
std::map<LemmaSeq, OracleCandidate> Enumerate(const Corpus &corpus,
                                              size_t max_len, Admit admit) {
  // Per key: ordered list of (pos, count) in first-seen order.
  std::map<LemmaSeq, std::vector<std::pair<PosSeq, int64_t>>> seen;
  for (const Sentence &s : corpus.sentences) {
    const size_t len = s.tokens.size();
    for (size_t i = 0; i < len; ++i) {
      for (size_t j = i; j < len && j - i + 1 <= max_len; ++j) {
        LemmaSeq lemmas;
        PosSeq pos;
        for (size_t k = i; k <= j; ++k) {
          lemmas.push_back(s.tokens[k].lemma);
          pos.push_back(s.tokens[k].upos);
        }
        if (!admit(pos, lemmas)) continue;
        auto &variants = seen[lemmas];
        auto it = std::find_if(variants.begin(), variants.end(),
                               [&](const auto &v) { return v.first == pos; });
        if (it == variants.end()) {
          variants.emplace_back(pos, 1);
        } else {
          ++it->second;
        }
      }
    }
  }
  std::map<LemmaSeq, OracleCandidate> out;
  for (const auto &[key, variants] : seen) {
    OracleCandidate c;
    int64_t best = 0;
    for (const auto &[pos, n] : variants) {
      c.count += n;
      if (n > best) {
        best = n;
        c.canonical_pos = pos;
      }
    }
    out[key] = c;
  }
  return out;
}

double Primal(const Dataset &data, const std::vector<double> &w, double b,
              double c) {
  double obj = 0.0;
  for (double v : w) obj += 0.5 * v * v;
  for (size_t i = 0; i < data.rows; ++i) {
    double m = b;
    for (size_t j = 0; j < data.cols; ++j) m += w[j] * data.x[i * data.cols + j];
    obj += c * std::max(0.0, 1.0 - data.y[i] * m);
  }
  return obj;
}

// Euclidean projection onto {0 <= a <= c, sum y a = 0} by bisection on the
// hyperplane multiplier.
void Project(const std::vector<double> &v, const std::vector<double> &y,
             double c, std::vector<double> *out) {
  const auto residual = [&](double lambda) {
    double s = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
      s += y[i] * std::clamp(v[i] - lambda * y[i], 0.0, c);
    }
    return s;
  };
  double lo = -1.0, hi = 1.0;
  while (residual(lo) < 0) lo *= 2;
  while (residual(hi) > 0) hi *= 2;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1 + std::abs(lo)); ++it) {
    double mid = 0.5 * (lo + hi);
    (residual(mid) > 0 ? lo : hi) = mid;
  }
  double lambda = 0.5 * (lo + hi);
  out->resize(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    (*out)[i] = std::clamp(v[i] - lambda * y[i], 0.0, c);
  }
}

}  // namespace

std::map<LemmaSeq, OracleCandidate> BruteForceCandidates(
    const Corpus &corpus, const FilterConfig &cfg) {
  return Enumerate(corpus, static_cast<size_t>(cfg.max_len),
                   [&](const PosSeq &pos, const LemmaSeq &lemmas) {
                     return OracleAdmits(pos, lemmas, cfg);
                   });
}

std::map<LemmaSeq, OracleCandidate> BruteForcePatternCandidates(
    const Corpus &corpus, const PatternSet &patterns) {
  size_t longest = 0;
  for (const PosSeq &p : patterns) longest = std::max(longest, p.size());
  return Enumerate(corpus, std::max<size_t>(longest, 1),
                   [&](const PosSeq &pos, const LemmaSeq &) {
                     return patterns.count(pos) > 0;
                   });
}

std::vector<double> ProseLinguisticFeatures(const PosSeq &pos) {
  std::vector<double> start(17, 0), end(17, 0), anywhere(17, 0), count(17, 0);
  start[static_cast<int>(pos.front())] = 1;
  end[static_cast<int>(pos.back())] = 1;
  // "anywhere in the CT other than the first and last position"
  for (size_t i = 0; i < pos.size(); ++i) {
    bool interior = i != 0 && i != pos.size() - 1;
    if (interior) anywhere[static_cast<int>(pos[i])] = 1;
  }
  for (UdTag t : pos) count[static_cast<int>(t)] += 1;
  std::set<UdTag> unique(pos.begin(), pos.end());
  std::vector<double> out;
  for (auto *v : {&start, &end, &anywhere, &count}) {
    out.insert(out.end(), v->begin(), v->end());
  }
  out.push_back(static_cast<double>(unique.size()));
  return out;
}

double HandRelLogFreqSum(const LemmaSeq &lemmas,
                         const std::map<std::string, int64_t> &counts,
                         int64_t total,
                         const std::vector<std::string> &stoplist) {
  double sum = 0.0;
  for (const std::string &l : lemmas) {
    if (std::find(stoplist.begin(), stoplist.end(), l) != stoplist.end()) {
      continue;
    }
    auto it = counts.find(l);
    double f = it == counts.end() ? 1.0 : static_cast<double>(it->second);
    sum += std::log(f) - std::log(static_cast<double>(total));
  }
  return sum;
}

DualOracleResult SolveHingeDualOracle(const Dataset &data, double c,
                                      int max_iterations,
                                      double gap_tolerance) {
  const size_t n = data.rows, d = data.cols;
  std::vector<double> y(n);
  for (size_t i = 0; i < n; ++i) y[i] = data.y[i];
  // Q_ij = y_i y_j x_i . x_j
  std::vector<double> q(n * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (size_t k = 0; k < d; ++k) {
        s += static_cast<double>(data.x[i * d + k]) * data.x[j * d + k];
      }
      q[i * n + j] = q[j * n + i] = y[i] * y[j] * s;
    }
  }
  // Largest eigenvalue by power iteration.
  std::vector<double> v(n, 1.0), qv(n);
  double lipschitz = 1.0;
  for (int it = 0; it < 500; ++it) {
    for (size_t i = 0; i < n; ++i) {
      qv[i] = 0.0;
      for (size_t j = 0; j < n; ++j) qv[i] += q[i * n + j] * v[j];
    }
    double norm = std::sqrt(std::inner_product(qv.begin(), qv.end(), qv.begin(), 0.0));
    if (norm == 0.0) break;
    lipschitz = norm / std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    for (size_t i = 0; i < n; ++i) v[i] = qv[i] / norm;
  }
  lipschitz *= 1.01;

  const auto grad = [&](const std::vector<double> &a, std::vector<double> *g) {
    g->assign(n, -1.0);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) (*g)[i] += q[i * n + j] * a[j];
    }
  };
  const auto dual_value = [&](const std::vector<double> &a) {
    double quad = 0.0, lin = 0.0;
    for (size_t i = 0; i < n; ++i) {
      lin += a[i];
      for (size_t j = 0; j < n; ++j) quad += a[i] * q[i * n + j] * a[j];
    }
    return lin - 0.5 * quad;  // maximized
  };
  const auto recover_w = [&](const std::vector<double> &a) {
    std::vector<double> w(d, 0.0);
    for (size_t i = 0; i < n; ++i) {
      for (size_t k = 0; k < d; ++k) w[k] += a[i] * y[i] * data.x[i * d + k];
    }
    return w;
  };
  const auto best_bias = [&](const std::vector<double> &w) {
    std::vector<double> m(n);
    double lo = 1e300, hi = -1e300;
    for (size_t i = 0; i < n; ++i) {
      m[i] = 0.0;
      for (size_t k = 0; k < d; ++k) m[i] += w[k] * data.x[i * d + k];
      lo = std::min(lo, y[i] - m[i]);
      hi = std::max(hi, y[i] - m[i]);
    }
    const auto f = [&](double b) {
      double s = 0.0;
      for (size_t i = 0; i < n; ++i) s += c * std::max(0.0, 1.0 - y[i] * (m[i] + b));
      return s;
    };
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo - 1.0, bnd = hi + 1.0;
    double x1 = bnd - phi * (bnd - a), x2 = a + phi * (bnd - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 300 && bnd - a > 1e-13; ++it) {
      if (f1 <= f2) {
        bnd = x2;
        x2 = x1;
        f2 = f1;
        x1 = bnd - phi * (bnd - a);
        f1 = f(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + phi * (bnd - a);
        f2 = f(x2);
      }
    }
    return 0.5 * (a + bnd);
  };

  std::vector<double> alpha(n, 0.0), yk = alpha, prev = alpha, g, step;
  double t = 1.0;
  double prev_obj = 0.0;
  DualOracleResult result;
  for (int it = 1; it <= max_iterations; ++it) {
    grad(yk, &g);
    step.resize(n);
    for (size_t i = 0; i < n; ++i) step[i] = yk[i] - g[i] / lipschitz;
    prev = alpha;
    Project(step, y, c, &alpha);
    const double obj = -dual_value(alpha);  // minimized form
    if (it > 1 && obj > prev_obj) {
      // Adaptive restart.
      t = 1.0;
      yk = alpha;
    } else {
      double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      for (size_t i = 0; i < n; ++i) {
        yk[i] = alpha[i] + ((t - 1.0) / t_next) * (alpha[i] - prev[i]);
      }
      t = t_next;
    }
    prev_obj = obj;
    result.iterations = it;
    if (it % 200 == 0 || it == max_iterations) {
      std::vector<double> w = recover_w(alpha);
      double b = best_bias(w);
      double p = Primal(data, w, b, c);
      double dv = dual_value(alpha);
      result.w = w;
      result.b = b;
      result.primal = p;
      result.dual = dv;
      if (p - dv <= gap_tolerance * std::max(1.0, std::abs(p))) break;
    }
  }
  return result;
}

Corpus RandomCorpus(std::mt19937_64 &rng, int tokens) {
  static const std::vector<std::string> kVocab = {
      "sila",  "pes",    "riba",  "moder",   "velik", "čas",  "učenje",
      "model", "a,b",    "x_y",   "analiza", "v",     "po",   "stik",
      "ab",    "kratek", "ženska", "mišica", "do",    "in"};
  Corpus corpus;
  corpus.domain_name = "random";
  std::uniform_int_distribution<int> sentence_len(1, 14);
  std::uniform_int_distribution<size_t> word(0, kVocab.size() - 1);
  // Bias tags toward the ones the filter admits so candidates are common.
  std::vector<UdTag> weighted = {UdTag::kNoun, UdTag::kNoun, UdTag::kNoun,
                                 UdTag::kAdj,  UdTag::kAdj,  UdTag::kPropn,
                                 UdTag::kAdv,  UdTag::kAdp};
  for (UdTag t : kAllUdTags) weighted.push_back(t);
  std::uniform_int_distribution<size_t> tag(0, weighted.size() - 1);
  int left = tokens;
  while (left > 0) {
    Sentence s;
    int len = std::min(left, sentence_len(rng));
    for (int i = 0; i < len; ++i) {
      Token t;
      t.lemma = kVocab[word(rng)];
      t.surface = t.lemma;
      t.upos = weighted[tag(rng)];
      s.tokens.push_back(std::move(t));
    }
    left -= len;
    corpus.token_count += len;
    corpus.sentences.push_back(std::move(s));
  }
  return corpus;
}

Dataset RandomDataset(std::mt19937_64 &rng, size_t rows, size_t cols,
                      bool separable) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Dataset data;
  data.rows = rows;
  data.cols = cols;
  std::vector<double> hyper(cols);
  double norm = 0.0;
  for (double &h : hyper) {
    h = normal(rng);
    norm += h * h;
  }
  // Unit normal, so the separable gap below is a geometric margin.
  for (double &h : hyper) h /= std::sqrt(norm);
  const double offset = 0.3 * normal(rng);
  while (data.y.size() < rows) {
    std::vector<float> x(cols);
    for (float &v : x) v = static_cast<float>(normal(rng));
    double s = offset;
    for (size_t j = 0; j < cols; ++j) s += hyper[j] * x[j];
    int8_t label;
    if (separable) {
      if (std::abs(s) < 0.5) continue;
      label = s > 0 ? 1 : -1;
    } else {
      label = (s + 0.7 * normal(rng)) > 0 ? 1 : -1;
    }
    data.x.insert(data.x.end(), x.begin(), x.end());
    data.y.push_back(label);
  }
  return data;
}

}  // namespace termex::testing
