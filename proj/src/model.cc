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

#include "termex/model.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>

#include "termex/binary_io.h"
#include "termex/error.h"

namespace termex {
namespace {

constexpr std::string_view kModelMagic = "TEXM1";
constexpr double kMinStdev = 1e-12;

// Four partial sums so the loop vectorizes without reassociation flags.
double Dot(std::span<const double> w, std::span<const float> x) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  const size_t n = x.size();
  size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    s0 += w[j] * static_cast<double>(x[j]);
    s1 += w[j + 1] * static_cast<double>(x[j + 1]);
    s2 += w[j + 2] * static_cast<double>(x[j + 2]);
    s3 += w[j + 3] * static_cast<double>(x[j + 3]);
  }
  for (; j < n; ++j) s0 += w[j] * static_cast<double>(x[j]);
  return (s0 + s1) + (s2 + s3);
}

double SquaredNorm(std::span<const double> w) {
  double s = 0.0;
  for (double v : w) s += v * v;
  return s;
}

void CheckBothClasses(const Dataset &data) {
  bool pos = false, neg = false;
  for (int8_t y : data.y) {
    if (y > 0) pos = true;
    if (y < 0) neg = true;
  }
  if (!pos || !neg) {
    throw DataError(
        "training data has a single class; need at least one term and one "
        "non-term row");
  }
}

bool Converged(double prev, double cur, double tol) {
  return std::abs(prev - cur) <=
         tol * std::max(std::abs(cur), std::numeric_limits<double>::min());
}

// log(1 + exp(-z)) without overflow.
double LogLoss(double z) {
  return z > 0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
}

// d/dz log(1 + exp(-z)) = -1 / (1 + exp(z)).
double LogLossDerivative(double z) {
  if (z > 0) {
    double e = std::exp(-z);
    return -e / (1.0 + e);
  }
  return -1.0 / (1.0 + std::exp(z));
}

}  // namespace

std::string_view LossName(Loss loss) {
  return loss == Loss::kLogistic ? "logistic" : "hinge";
}

Loss ParseLoss(std::string_view name) {
  if (name == "hinge") return Loss::kHinge;
  if (name == "logistic") return Loss::kLogistic;
  throw UsageError("unknown loss '" + std::string(name) +
                   "' (expected hinge or logistic)");
}

void Standardizer::Apply(std::span<const float> in,
                         std::span<double> out) const {
  for (size_t j = 0; j < in.size(); ++j) {
    out[j] = (static_cast<double>(in[j]) - means[j]) / stdevs[j];
  }
}

Standardizer FitStandardizer(std::span<const float> data, size_t cols) {
  Standardizer s;
  s.means.assign(cols, 0.0);
  s.stdevs.assign(cols, 1.0);
  if (cols == 0) return s;
  const size_t rows = data.size() / cols;
  if (rows == 0) return s;
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) s.means[j] += data[i * cols + j];
  }
  for (double &m : s.means) m /= static_cast<double>(rows);
  std::vector<double> var(cols, 0.0);
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) {
      double d = data[i * cols + j] - s.means[j];
      var[j] += d * d;
    }
  }
  for (size_t j = 0; j < cols; ++j) {
    double sd = std::sqrt(var[j] / static_cast<double>(rows));
    s.stdevs[j] = sd < kMinStdev ? 1.0 : sd;
  }
  return s;
}

std::vector<double> SampleCosts(const Dataset &data,
                                const TrainOptions &options) {
  if (!(options.c > 0.0)) throw UsageError("c must be positive");
  std::vector<double> costs(data.rows, options.c);
  if (!options.balanced) return costs;
  double pos = 0, neg = 0;
  for (int8_t y : data.y) (y > 0 ? pos : neg) += 1;
  const double n = static_cast<double>(data.rows);
  for (size_t i = 0; i < data.rows; ++i) {
    costs[i] *= n / (2.0 * (data.y[i] > 0 ? pos : neg));
  }
  return costs;
}

double HingeObjective(const Dataset &data, std::span<const double> w,
                      double b, std::span<const double> costs) {
  double loss = 0.0;
  for (size_t i = 0; i < data.rows; ++i) {
    double z = data.y[i] * (Dot(w, data.row(i)) + b);
    if (z < 1.0) loss += costs[i] * (1.0 - z);
  }
  return 0.5 * SquaredNorm(w) + loss;
}

double LogisticObjective(const Dataset &data, std::span<const double> w,
                         double b, std::span<const double> costs,
                         std::span<double> grad_w, double *grad_b) {
  const bool want_grad = !grad_w.empty();
  if (want_grad) {
    std::copy(w.begin(), w.end(), grad_w.begin());
    if (grad_b != nullptr) *grad_b = 0.0;
  }
  double loss = 0.0;
  for (size_t i = 0; i < data.rows; ++i) {
    std::span<const float> x = data.row(i);
    const double y = data.y[i];
    const double z = y * (Dot(w, x) + b);
    loss += costs[i] * LogLoss(z);
    if (want_grad) {
      const double g = costs[i] * LogLossDerivative(z) * y;
      for (size_t j = 0; j < x.size(); ++j) grad_w[j] += g * x[j];
      if (grad_b != nullptr) *grad_b += g;
    }
  }
  return 0.5 * SquaredNorm(w) + loss;
}

double OptimalHingeBias(const Dataset &data, std::span<const double> w,
                        std::span<const double> costs) {
  // The loss is piecewise linear in b with a kink at y_i - m_i for every
  // row. Moving right past a kink raises the slope by c_i.
  struct Kink {
    double at;
    double weight;
  };
  std::vector<Kink> kinks(data.rows);
  double slope = 0.0;
  for (size_t i = 0; i < data.rows; ++i) {
    double m = Dot(w, data.row(i));
    kinks[i] = {data.y[i] - m, costs[i]};
    if (data.y[i] > 0) slope -= costs[i];
  }
  std::sort(kinks.begin(), kinks.end(),
            [](const Kink &a, const Kink &b) { return a.at < b.at; });
  for (size_t k = 0; k < kinks.size(); ++k) {
    slope += kinks[k].weight;
    if (slope > 0.0) return kinks[k].at;
    if (slope == 0.0) {
      // Flat between this kink and the next.
      return k + 1 < kinks.size() ? 0.5 * (kinks[k].at + kinks[k + 1].at)
                                  : kinks[k].at;
    }
  }
  return kinks.empty() ? 0.0 : kinks.back().at;
}

SolverResult SolveHinge(const Dataset &data, const TrainOptions &options) {
  CheckBothClasses(data);
  const size_t n = data.rows;
  const size_t d = data.cols;
  const std::vector<double> costs = SampleCosts(data, options);

  std::vector<double> sq_norm(n);
  double mean_sq = 0.0;
  for (size_t i = 0; i < n; ++i) {
    std::span<const float> x = data.row(i);
    double s = 0.0;
    for (float v : x) s += static_cast<double>(v) * v;
    sq_norm[i] = s;
    mean_sq += s;
  }
  mean_sq /= static_cast<double>(n);
  // Augmented-Lagrangian penalty on sum_i alpha_i y_i.
  const double rho = 0.01 * std::max(mean_sq, 1.0);

  std::vector<double> alpha(n, 0.0);
  std::vector<double> w(d, 0.0);
  std::vector<double> w_neg(d, 0.0);  // negative-class part of w, sign dropped
  double alpha_y = 0.0;     // sum_i alpha_i y_i
  double multiplier = 0.0;  // converges to the bias

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(options.seed);

  // Dual value after rescaling the heavier class so sum alpha y = 0.
  const auto feasible_dual = [&]() {
    double sum_pos = 0.0, sum_neg = 0.0;
    for (size_t i = 0; i < n; ++i) (data.y[i] > 0 ? sum_pos : sum_neg) += alpha[i];
    double scale_pos = 1.0, scale_neg = 1.0;
    if (sum_pos > sum_neg) {
      scale_pos = sum_neg / sum_pos;
    } else if (sum_neg > 0.0) {
      scale_neg = sum_pos / sum_neg;
    }
    double sq = 0.0;
    for (size_t j = 0; j < d; ++j) {
      double v = scale_pos * (w[j] + w_neg[j]) - scale_neg * w_neg[j];
      sq += v * v;
    }
    return scale_pos * sum_pos + scale_neg * sum_neg - 0.5 * sq;
  };

  SolverResult result;
  // The primal value of the dual iterate oscillates, so keep the best one.
  double best = std::numeric_limits<double>::infinity();
  double best_b = 0.0;
  std::vector<double> best_w(d, 0.0);
  // Rows whose bound looks settled drop out of the sweep until the active
  // set converges; then all rows come back.
  size_t active = n;
  double shrink_max = std::numeric_limits<double>::infinity();
  double shrink_min = -std::numeric_limits<double>::infinity();
  double unshrink_tol = 0.1;
  int epoch = 0;
  while (epoch < options.max_epochs) {
    ++epoch;
    for (size_t k = active - 1; k > 0; --k) {
      std::swap(order[k], order[rng() % (k + 1)]);
    }
    double pg_max = -std::numeric_limits<double>::infinity();
    double pg_min = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < active; ++k) {
      const size_t i = order[k];
      std::span<const float> x = data.row(i);
      const double y = data.y[i];
      const double g = y * (Dot(w, x) + multiplier + rho * alpha_y) - 1.0;
      const double a = alpha[i];
      const double upper = costs[i];
      double pg = g;
      if (a <= 0.0) {
        if (g > shrink_max) {
          std::swap(order[k--], order[--active]);
          continue;
        }
        pg = std::min(g, 0.0);
      } else if (a >= upper) {
        if (g < shrink_min) {
          std::swap(order[k--], order[--active]);
          continue;
        }
        pg = std::max(g, 0.0);
      }
      pg_max = std::max(pg_max, pg);
      pg_min = std::min(pg_min, pg);
      if (pg == 0.0) continue;
      const double next = std::clamp(a - g / (sq_norm[i] + rho), 0.0, upper);
      const double step = (next - a) * y;
      if (step == 0.0) continue;
      alpha[i] = next;
      alpha_y += step;
      for (size_t j = 0; j < d; ++j) w[j] += step * x[j];
      if (y < 0) {
        for (size_t j = 0; j < d; ++j) w_neg[j] -= step * x[j];
      }
    }
    if (active == 0 || pg_max - pg_min <= unshrink_tol) {
      active = n;
      shrink_max = std::numeric_limits<double>::infinity();
      shrink_min = -std::numeric_limits<double>::infinity();
      unshrink_tol = std::max(0.5 * unshrink_tol, 1e-12);
    } else {
      shrink_max = pg_max > 0.0 ? pg_max : std::numeric_limits<double>::infinity();
      shrink_min = pg_min < 0.0 ? pg_min : -std::numeric_limits<double>::infinity();
    }
    multiplier += rho * alpha_y;

    const double b = OptimalHingeBias(data, w, costs);
    const double obj = HingeObjective(data, w, b, costs);
    result.trace.push_back(obj);
    if (obj < best) {
      best = obj;
      best_b = b;
      best_w = w;
    }
    if (best - feasible_dual() <= options.tolerance * std::abs(best)) break;
  }
  result.epochs = epoch;
  result.bias = best_b;
  result.objective = best;
  result.weights = std::move(best_w);
  return result;
}

SolverResult SolveLogistic(const Dataset &data, const TrainOptions &options) {
  CheckBothClasses(data);
  const size_t d = data.cols;
  const size_t dim = d + 1;  // weights, then bias
  const std::vector<double> costs = SampleCosts(data, options);
  constexpr size_t kMemory = 10;

  std::vector<double> z(dim, 0.0), grad(dim), next_z(dim), next_grad(dim),
      dir(dim);
  const auto evaluate = [&](const std::vector<double> &at,
                            std::vector<double> &g) {
    double gb = 0.0;
    double f = LogisticObjective(data, std::span<const double>(at.data(), d),
                                 at[d], costs, std::span<double>(g.data(), d),
                                 &gb);
    g[d] = gb;
    return f;
  };
  const auto dot = [](const std::vector<double> &a,
                      const std::vector<double> &b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
  };

  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;
  double f = evaluate(z, grad);
  SolverResult result;
  for (int epoch = 1; epoch <= options.max_epochs; ++epoch) {
    // Two-loop recursion for dir = -H grad.
    dir = grad;
    std::vector<double> coeff(s_hist.size());
    for (size_t k = s_hist.size(); k-- > 0;) {
      coeff[k] = rho_hist[k] * dot(s_hist[k], dir);
      for (size_t j = 0; j < dim; ++j) dir[j] -= coeff[k] * y_hist[k][j];
    }
    if (!s_hist.empty()) {
      const double gamma =
          dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
      for (double &v : dir) v *= gamma;
    } else {
      const double gnorm = std::sqrt(dot(grad, grad));
      for (double &v : dir) v /= std::max(gnorm, 1.0);
    }
    for (size_t k = 0; k < s_hist.size(); ++k) {
      const double beta = rho_hist[k] * dot(y_hist[k], dir);
      for (size_t j = 0; j < dim; ++j) dir[j] += s_hist[k][j] * (coeff[k] - beta);
    }
    for (double &v : dir) v = -v;

    double slope = dot(grad, dir);
    if (slope >= 0.0) {
      // Not a descent direction; restart from steepest descent.
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      for (size_t j = 0; j < dim; ++j) dir[j] = -grad[j];
      slope = dot(grad, dir);
    }
    // Backtracking line search (Armijo).
    double step = 1.0;
    double next_f = 0.0;
    for (int tries = 0; tries < 60; ++tries) {
      for (size_t j = 0; j < dim; ++j) next_z[j] = z[j] + step * dir[j];
      next_f = evaluate(next_z, next_grad);
      if (next_f <= f + 1e-4 * step * slope) break;
      step *= 0.5;
    }

    std::vector<double> s(dim), yv(dim);
    for (size_t j = 0; j < dim; ++j) {
      s[j] = next_z[j] - z[j];
      yv[j] = next_grad[j] - grad[j];
    }
    const double sy = dot(s, yv);
    if (sy > 1e-12) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(yv));
      rho_hist.push_back(1.0 / sy);
      if (s_hist.size() > kMemory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    const double prev = f;
    z.swap(next_z);
    grad.swap(next_grad);
    f = next_f;
    result.trace.push_back(f);
    result.epochs = epoch;
    if (Converged(prev, f, options.tolerance)) break;
  }
  result.weights.assign(z.begin(), z.begin() + d);
  result.bias = z[d];
  result.objective = f;
  return result;
}

namespace {

// Standardizes the `columns` of `row` into `out`, rounding to float as
// training does.
void StandardizeColumns(std::span<const float> row,
                        std::span<const uint32_t> columns,
                        const Standardizer &s, std::span<float> out) {
  for (size_t k = 0; k < columns.size(); ++k) {
    out[k] = static_cast<float>(
        (static_cast<double>(row[columns[k]]) - s.means[k]) / s.stdevs[k]);
  }
}

}  // namespace

LinearModel Train(const FeatureMatrix &x, GroupMask groups,
                  const TrainOptions &options, std::vector<double> *log) {
  const std::vector<uint32_t> columns = x.schema().Columns(groups);
  const size_t k = columns.size();
  Dataset data;
  data.rows = x.rows();
  data.cols = k;
  data.x.resize(data.rows * k);
  data.y.resize(data.rows);
  for (size_t i = 0; i < x.rows(); ++i) {
    std::span<const float> row = x.row(i);
    for (size_t c = 0; c < k; ++c) data.x[i * k + c] = row[columns[c]];
    switch (x.labels()[i]) {
      case Label::kTerm:
        data.y[i] = 1;
        break;
      case Label::kNonTerm:
        data.y[i] = -1;
        break;
      case Label::kUnlabeled:
        throw DataError("training row '" + Join(x.keys()[i].lemmas, " ") +
                        "' is unlabeled");
    }
  }
  CheckBothClasses(data);

  LinearModel model;
  model.standardizer = FitStandardizer(data.x, k);
  for (size_t i = 0; i < data.rows; ++i) {
    for (size_t c = 0; c < k; ++c) {
      float &v = data.x[i * k + c];
      v = static_cast<float>((static_cast<double>(v) -
                              model.standardizer.means[c]) /
                             model.standardizer.stdevs[c]);
    }
  }

  SolverResult solved = options.loss == Loss::kHinge
                            ? SolveHinge(data, options)
                            : SolveLogistic(data, options);
  if (log != nullptr) {
    log->insert(log->end(), solved.trace.begin(), solved.trace.end());
  }
  model.weights = std::move(solved.weights);
  model.bias = solved.bias;
  model.c = options.c;
  model.loss = options.loss;
  model.schema_fingerprint = x.schema().fingerprint();
  model.embedding_dim = x.schema().embedding_dim();
  model.groups = groups;
  return model;
}

std::vector<Prediction> Predict(const LinearModel &model,
                                const FeatureMatrix &x) {
  if (x.schema().fingerprint() != model.schema_fingerprint) {
    throw DataError("feature schema fingerprint does not match the model");
  }
  const std::vector<uint32_t> columns = x.schema().Columns(model.groups);
  if (columns.size() != model.weights.size()) {
    throw DataError("model has " + std::to_string(model.weights.size()) +
                    " weights, feature groups select " +
                    std::to_string(columns.size()) + " columns");
  }
  std::vector<Prediction> out(x.rows());
  std::vector<float> z(columns.size());
  for (size_t i = 0; i < x.rows(); ++i) {
    StandardizeColumns(x.row(i), columns, model.standardizer, z);
    const double margin = Dot(model.weights, z) + model.bias;
    out[i] = {margin > 0.0 ? Label::kTerm : Label::kNonTerm, margin};
  }
  return out;
}

void SaveModel(const LinearModel &model, std::ostream &out) {
  LittleEndianWriter w(out);
  w.Bytes(kModelMagic);
  w.U8(static_cast<uint8_t>(model.loss));
  w.F64(model.c);
  w.U64(model.schema_fingerprint);
  w.U32(model.embedding_dim);
  w.U8(model.groups.bits());
  w.U32(static_cast<uint32_t>(model.weights.size()));
  for (double v : model.weights) w.F64(v);
  w.F64(model.bias);
  for (double v : model.standardizer.means) w.F64(v);
  for (double v : model.standardizer.stdevs) w.F64(v);
  w.String(model.provenance);
}

LinearModel LoadModel(std::istream &in) {
  LittleEndianReader r(in);
  std::string magic = r.Bytes(kModelMagic.size(), "magic");
  if (magic != kModelMagic) {
    if (magic.starts_with("TEXM")) {
      throw FormatError(4, "unsupported model version '" + magic.substr(4) +
                               "' (this build reads version 1)");
    }
    throw FormatError(0, "bad magic, expected TEXM1");
  }
  LinearModel m;
  uint64_t at = r.offset();
  uint8_t loss = r.U8("loss");
  if (loss > 1) throw FormatError(at, "unknown loss " + std::to_string(loss));
  m.loss = static_cast<Loss>(loss);
  m.c = r.F64("c");
  m.schema_fingerprint = r.U64("fingerprint");
  at = r.offset();
  m.embedding_dim = r.U32("embedding dim");
  if (m.embedding_dim == 0 || m.embedding_dim > (1u << 20)) {
    throw FormatError(at, "invalid embedding dim");
  }
  at = r.offset();
  try {
    m.groups = GroupMask::FromBits(r.U8("groups"));
  } catch (const DataError &e) {
    throw FormatError(at, e.what());
  }
  FeatureSchema schema(m.embedding_dim);
  if (schema.fingerprint() != m.schema_fingerprint) {
    throw FormatError(at, "model schema fingerprint is not a known schema");
  }
  at = r.offset();
  uint32_t n = r.U32("weight count");
  if (n != schema.Columns(m.groups).size()) {
    throw FormatError(at, "weight count does not match the feature groups");
  }
  m.weights.resize(n);
  for (double &v : m.weights) v = r.F64("weights");
  m.bias = r.F64("bias");
  m.standardizer.means.resize(n);
  m.standardizer.stdevs.resize(n);
  for (double &v : m.standardizer.means) v = r.F64("means");
  for (double &v : m.standardizer.stdevs) v = r.F64("stdevs");
  m.provenance = r.String("provenance");
  if (!r.AtEnd()) throw FormatError(r.offset(), "trailing bytes after model");
  return m;
}

}  // namespace termex
