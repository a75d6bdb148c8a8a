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

// Linear classifiers over standardized features.
//
// The hinge model minimizes
//
//   1/2 |w|^2 + sum_i c_i max(0, 1 - y_i (w.x_i + b))
//
// with an unregularized bias b, c_i = c (or class-balanced). It is solved
// in the dual by coordinate descent, with the equality constraint
// sum_i alpha_i y_i = 0 that the free bias induces handled by an augmented
// Lagrangian whose multiplier is the bias. The logistic model replaces the
// hinge with log(1 + exp(-y (w.x + b))) and is solved in the primal by
// L-BFGS.

#ifndef TERMEX_MODEL_H_
#define TERMEX_MODEL_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "termex/features.h"

namespace termex {

enum class Loss : uint8_t { kHinge = 0, kLogistic = 1 };

std::string_view LossName(Loss loss);
Loss ParseLoss(std::string_view name);

// Dense row-major data with labels in {-1, +1}.
struct Dataset {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<float> x;
  std::vector<int8_t> y;

  std::span<const float> row(size_t i) const {
    return {x.data() + i * cols, cols};
  }
};

struct Standardizer {
  std::vector<double> means;
  std::vector<double> stdevs;  // population stdev; 1 for constant columns

  void Apply(std::span<const float> in, std::span<double> out) const;

  friend bool operator==(const Standardizer &, const Standardizer &) = default;
};

// Per-column mean and standard deviation of a row-major matrix.
Standardizer FitStandardizer(std::span<const float> data, size_t cols);

struct TrainOptions {
  double c = 1.0;
  Loss loss = Loss::kHinge;
  uint64_t seed = 1;
  // Scale c per class by n / (2 n_class).
  bool balanced = false;
  int max_epochs = 10000;
  // Hinge: stop when the relative duality gap drops below this.
  // Logistic: stop on the relative objective change between iterations.
  double tolerance = 1e-6;
};

struct SolverResult {
  std::vector<double> weights;
  double bias = 0.0;
  double objective = 0.0;
  int epochs = 0;
  // Primal objective after each epoch.
  std::vector<double> trace;
};

// Per-row regularization weights for `options`.
std::vector<double> SampleCosts(const Dataset &data,
                                const TrainOptions &options);

double HingeObjective(const Dataset &data, std::span<const double> w,
                      double b, std::span<const double> costs);

// Value of the logistic objective; fills the gradient when `grad_w` is
// nonempty.
double LogisticObjective(const Dataset &data, std::span<const double> w,
                         double b, std::span<const double> costs,
                         std::span<double> grad_w = {},
                         double *grad_b = nullptr);

// The bias minimizing the hinge objective for fixed w.
double OptimalHingeBias(const Dataset &data, std::span<const double> w,
                        std::span<const double> costs);

// Throws DataError unless both classes are present.
SolverResult SolveHinge(const Dataset &data, const TrainOptions &options);
SolverResult SolveLogistic(const Dataset &data, const TrainOptions &options);

struct LinearModel {
  std::vector<double> weights;  // one per selected column
  double bias = 0.0;
  double c = 1.0;
  Loss loss = Loss::kHinge;
  Standardizer standardizer;
  uint64_t schema_fingerprint = 0;
  uint32_t embedding_dim = kDefaultEmbeddingDim;
  GroupMask groups = GroupMask::All();
  std::string provenance;

  friend bool operator==(const LinearModel &, const LinearModel &) = default;
};

// Standardizes the columns of `groups`, then solves. Rows must be labelled
// term or non-term, with both classes present; throws DataError otherwise.
// The per-epoch objective is appended to `log` when given.
LinearModel Train(const FeatureMatrix &x, GroupMask groups,
                  const TrainOptions &options,
                  std::vector<double> *log = nullptr);

struct Prediction {
  Label label = Label::kNonTerm;
  double margin = 0.0;
};

// label = term iff margin > 0. Throws DataError on a schema fingerprint
// mismatch.
std::vector<Prediction> Predict(const LinearModel &model,
                                const FeatureMatrix &x);

// TEXM1 layout, little-endian: "TEXM1", u8 loss, f64 c, u64 fingerprint,
// u32 embedding dim, u8 group bits, u32 n, n x f64 weights, f64 bias,
// n x f64 means, n x f64 stdevs, u32-prefixed provenance.
void SaveModel(const LinearModel &model, std::ostream &out);
// Throws FormatError on a bad magic or unsupported version.
LinearModel LoadModel(std::istream &in);

}  // namespace termex

#endif  // TERMEX_MODEL_H_
