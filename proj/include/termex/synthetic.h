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


// Synthetic four-domain datasets with fake-encoder embedding stores.
//
// Gold labels follow a fixed linear rule over assembled features: a
// candidate is a term iff elmoTermSim > threshold, with the threshold put
// in the widest gap of the pooled score distribution.

#ifndef TERMEX_SYNTHETIC_H_
#define TERMEX_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "termex/eval.h"

namespace termex {

// Deterministic pseudo-random vector keyed by an FNV-1a hash of `key`;
// entries are N(0, 1/dim), so the norm is close to 1.
std::vector<float> FakeEncoderVector(std::string_view key, uint32_t dim);

struct SyntheticOptions {
  uint32_t dim = kDefaultEmbeddingDim;
  uint64_t seed = 7;
  int sentences_per_domain = 400;
  // Length of the shared direction added to domain-word vectors.
  double shift = 1.5;
};

struct SyntheticDataset {
  ExperimentData data;
  double threshold = 0.0;
};

SyntheticDataset MakeSyntheticDataset(const SyntheticOptions &options);

// Writes corpora, gold lists, stores, the general frequency list and a
// config.json referencing them. Returns the config path.
std::string WriteSyntheticDataset(const SyntheticDataset &dataset,
                                  const std::filesystem::path &dir,
                                  bool text_store = false);

}  // namespace termex

#endif  // TERMEX_SYNTHETIC_H_
