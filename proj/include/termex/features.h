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

// Candidate feature vectors. A row is laid out as
//
//   linguistic   StartUD[17] EndUD[17] AnywhereUD[17] CountOfUD[17]
//                NoUniquePos                                   69 columns
//   statistical  TermGenFreq TermDomFreq TermLength              3 columns
//   contextual   domain vector[dim] general vector[dim]
//                elmoSim elmoTermSim elmoStDev           2 * dim + 3 columns
//
// with UD tags in UdTag enumerator order. With dim = 1024 a row has 2123
// columns.

#ifndef TERMEX_FEATURES_H_
#define TERMEX_FEATURES_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "termex/candidates.h"
#include "termex/corpus.h"
#include "termex/embed_store.h"

namespace termex {

inline constexpr uint32_t kDefaultEmbeddingDim = 1024;
inline constexpr size_t kLinguisticWidth = 4 * kNumUdTags + 1;
inline constexpr size_t kStatisticalWidth = 3;

enum class FeatureGroup : uint8_t { kLinguistic, kStatistical, kContextual };

// A nonempty subset of feature groups. Letters: C contextual, P pattern
// (linguistic), S statistical.
class GroupMask {
 public:
  static GroupMask All() { return GroupMask(0b111); }
  // Accepts letter lists such as "C,P,S", "CPS" or "C&P&S". Throws
  // UsageError on an unknown letter or an empty set.
  static GroupMask Parse(std::string_view text);
  static GroupMask FromBits(uint8_t bits);

  bool contains(FeatureGroup g) const {
    return bits_ & (1u << static_cast<int>(g));
  }
  uint8_t bits() const { return bits_; }
  // Label such as "C&P&S" or "S&P".
  std::string ToString() const;

  friend bool operator==(GroupMask a, GroupMask b) = default;

 private:
  explicit GroupMask(uint8_t bits) : bits_(bits) {}
  uint8_t bits_;
};

// The seven nonempty subsets in ablation-table order:
// C&P&S, C&P, C&S, S&P, C, S, P.
std::array<GroupMask, 7> AblationOrder();

class FeatureSchema {
 public:
  explicit FeatureSchema(uint32_t embedding_dim = kDefaultEmbeddingDim);

  uint32_t embedding_dim() const { return embedding_dim_; }
  size_t size() const { return names_.size(); }
  const std::vector<std::string> &names() const { return names_; }
  FeatureGroup group(size_t column) const { return groups_[column]; }
  uint64_t fingerprint() const { return fingerprint_; }

  // Ascending column indices belonging to `mask`.
  std::vector<uint32_t> Columns(GroupMask mask) const;

  // Column offsets.
  static constexpr size_t kStartUd = 0;
  static constexpr size_t kEndUd = kNumUdTags;
  static constexpr size_t kAnywhereUd = 2 * kNumUdTags;
  static constexpr size_t kCountOfUd = 3 * kNumUdTags;
  static constexpr size_t kNoUniquePos = 4 * kNumUdTags;
  static constexpr size_t kTermGenFreq = kLinguisticWidth;
  static constexpr size_t kTermDomFreq = kLinguisticWidth + 1;
  static constexpr size_t kTermLength = kLinguisticWidth + 2;
  static constexpr size_t kContextual = kLinguisticWidth + kStatisticalWidth;
  size_t general_vector_offset() const { return kContextual + embedding_dim_; }
  size_t elmo_sim() const { return kContextual + 2 * embedding_dim_; }
  size_t elmo_term_sim() const { return elmo_sim() + 1; }
  size_t elmo_stdev() const { return elmo_sim() + 2; }

 private:
  uint32_t embedding_dim_;
  std::vector<std::string> names_;
  std::vector<FeatureGroup> groups_;
  uint64_t fingerprint_;
};

using LinguisticVector = std::array<double, kLinguisticWidth>;

// StartUD/EndUD one-hot on the first/last tag; AnywhereUD marks tags at
// interior positions only; CountOfUD counts every position; NoUniquePos is
// the number of distinct tags. `pos` must be nonempty.
LinguisticVector LinguisticFeatures(std::span<const UdTag> pos);

// Sum over non-stoplisted lemmas of ln(f / N), with f = 1 for lemmas absent
// from the table.
double RelLogFreqSum(std::span<const std::string> lemmas,
                     const FrequencyTable &table, const Stoplist &stop);

// TermGenFreq, TermDomFreq, TermLength (all tokens, stoplisted included).
std::array<double, kStatisticalWidth> StatisticalFeatures(
    const Candidate &c, const FrequencyTable &general,
    const FrequencyTable &domain, const Stoplist &stop);

// u.v / (|u| |v|), or 0 when either norm is 0.
double Cosine(std::span<const double> u, std::span<const double> v);

// Domain term vector, general term vector, elmoSim, elmoTermSim, elmoStDev.
// Throws DataError when the store kinds or dimensions disagree.
std::vector<double> ContextualFeatures(const Candidate &c,
                                       const EmbeddingStore &domain_store,
                                       const EmbeddingStore &general_store,
                                       std::span<const double> seed_vector,
                                       const Stoplist &stop);

// Term vector of a space-separated seed term over the domain store.
std::vector<double> SeedVector(std::string_view seed_term,
                               const EmbeddingStore &domain_store,
                               const Stoplist &stop);

// Everything needed to featurize the candidates of one domain.
struct FeatureInputs {
  const FrequencyTable &general_freq;
  const FrequencyTable &domain_freq;
  const EmbeddingStore &general_store;
  const EmbeddingStore &domain_store;
  const Stoplist &stoplist;
  std::string seed_term;
};

struct RowKey {
  std::string domain;
  LemmaSeq lemmas;

  friend bool operator==(const RowKey &, const RowKey &) = default;
};

// Row-major float matrix with aligned labels and keys.
class FeatureMatrix {
 public:
  explicit FeatureMatrix(FeatureSchema schema) : schema_(std::move(schema)) {}

  const FeatureSchema &schema() const { return schema_; }
  size_t rows() const { return labels_.size(); }
  size_t cols() const { return schema_.size(); }
  std::span<const float> row(size_t i) const {
    return {data_.data() + i * cols(), cols()};
  }
  const std::vector<float> &data() const { return data_; }
  const std::vector<Label> &labels() const { return labels_; }
  const std::vector<RowKey> &keys() const { return keys_; }

  // Throws DataError when `values` has the wrong length.
  void AppendRow(std::span<const double> values, Label label, RowKey key);
  void AppendRow(std::span<const float> values, Label label, RowKey key);

  static FeatureMatrix FromParts(FeatureSchema schema, std::vector<float> data,
                                 std::vector<Label> labels,
                                 std::vector<RowKey> keys);

  // Stacks rows of matrices sharing a schema fingerprint; throws DataError
  // otherwise.
  static FeatureMatrix Concat(std::span<const FeatureMatrix *const> parts);

 private:
  FeatureSchema schema_;
  std::vector<float> data_;
  std::vector<Label> labels_;
  std::vector<RowKey> keys_;
};

// One row per candidate in candidate-key order.
FeatureMatrix Assemble(const CandidateSet &cands, const FeatureInputs &inputs);

// TEXF1 binary layout, little-endian:
//   "TEXF1", u32 embedding dim, u64 schema fingerprint, u32 cols, u64 rows,
//   u32-length-prefixed provenance string, rows x cols f32 (row-major), then
//   per row: u8 label, prefixed domain string, prefixed space-joined lemmas.
void SaveFeatureMatrix(const FeatureMatrix &m, std::ostream &out,
                       std::string_view provenance = {});
// Throws FormatError on bad magic, truncation or fingerprint mismatch.
FeatureMatrix LoadFeatureMatrix(std::istream &in);

// Debug TSV: domain, lemmas, label, then one column per feature.
void WriteFeatureTsv(const FeatureMatrix &m, std::ostream &out,
                     std::span<const std::string> preamble = {});

}  // namespace termex

#endif  // TERMEX_FEATURES_H_
