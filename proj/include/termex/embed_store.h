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

// Per-lemma averaged contextual embeddings.
//
// EMBS1 binary layout, all integers and floats little-endian:
//
//   "EMBS1"                 5 bytes
//   kind                    u8   (0 = general, 1 = domain)
//   dim                     u32  (> 0)
//   record count            u32
//   records, each:
//     lemma length          u32  (bytes)
//     lemma                 UTF-8
//     vector                dim x f32
//     stddev                f32  (domain stores only)
//
// The debug text form starts with "#EMBS1-text<TAB>kind<TAB>dim" and then
// has one "lemma<TAB>v1<TAB>...<TAB>vdim[<TAB>stddev]" line per record.

#ifndef TERMEX_EMBED_STORE_H_
#define TERMEX_EMBED_STORE_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "termex/text_util.h"

namespace termex {

enum class StoreKind : uint8_t { kGeneral = 0, kDomain = 1 };

std::string_view StoreKindName(StoreKind kind);

class EmbeddingStore {
 public:
  EmbeddingStore(StoreKind kind, uint32_t dim);

  StoreKind kind() const { return kind_; }
  uint32_t dim() const { return dim_; }
  size_t size() const { return lemmas_.size(); }
  bool has_stdevs() const { return kind_ == StoreKind::kDomain; }

  // Appends a record. `stdev` is required for domain stores and forbidden
  // for general ones. Throws DataError on a length mismatch, duplicate
  // lemma, or negative/non-finite stdev.
  void Add(std::string lemma, std::span<const float> vector,
           std::optional<float> stdev = std::nullopt);

  // nullptr when the lemma has no vector.
  const float *Find(std::string_view lemma) const;
  std::optional<float> FindStdev(std::string_view lemma) const;

  // Records in insertion order.
  const std::string &lemma(size_t i) const { return lemmas_[i]; }
  std::span<const float> vector(size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  float stdev(size_t i) const { return stdevs_[i]; }

 private:
  StoreKind kind_;
  uint32_t dim_;
  std::vector<std::string> lemmas_;
  std::vector<float> data_;
  std::vector<float> stdevs_;
  std::unordered_map<std::string, size_t> index_;
};

// Throws FormatError (with byte offset) on bad magic, unknown kind, zero
// dim, truncation or, when `expected_dim` is given, a dim mismatch.
EmbeddingStore LoadStore(std::istream &in,
                         std::optional<uint32_t> expected_dim = std::nullopt);
void SaveStore(const EmbeddingStore &store, std::ostream &out);

// Debug text form. Throws ParseError naming the line.
EmbeddingStore LoadTextStore(std::istream &in,
                             std::optional<uint32_t> expected_dim = std::nullopt,
                             const std::string &source = "<text-store>");
void SaveTextStore(const EmbeddingStore &store, std::ostream &out);

// Lemmas excluded from frequency sums and embedding averages.
class Stoplist {
 public:
  // The built-in Slovenian preposition list.
  Stoplist();
  explicit Stoplist(std::unordered_set<std::string> lemmas);

  static Stoplist Empty() { return Stoplist(std::unordered_set<std::string>{}); }

  bool contains(std::string_view lemma) const {
    return lemmas_.count(std::string(lemma)) > 0;
  }
  size_t size() const { return lemmas_.size(); }

 private:
  std::unordered_set<std::string> lemmas_;
};

// One lemma per line, lowercased; blank lines and '#' comments ignored.
Stoplist LoadStoplist(std::istream &in);

struct TermVector {
  std::vector<double> values;
  // Contributing lemmas over non-stoplisted lemmas; 0 when none contribute.
  double coverage = 0.0;
};

// Mean of the stored vectors of the non-stoplisted lemmas present in the
// store. Zero vector with coverage 0 when none are present.
TermVector ComputeTermVector(std::span<const std::string> lemmas,
                             const EmbeddingStore &store, const Stoplist &stop);

// Mean stored stdev over non-stoplisted lemmas present in the store; 0 when
// none. Throws UsageError for a general store.
double ComputeTermStdev(std::span<const std::string> lemmas,
                        const EmbeddingStore &store, const Stoplist &stop);

}  // namespace termex

#endif  // TERMEX_EMBED_STORE_H_
