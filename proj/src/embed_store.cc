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

#include "termex/embed_store.h"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "termex/binary_io.h"
#include "termex/error.h"

namespace termex {
namespace {

constexpr std::string_view kMagic = "EMBS1";
constexpr std::string_view kTextMagic = "#EMBS1-text";
// Sanity caps so a corrupt header cannot trigger a huge allocation.
constexpr uint32_t kMaxDim = 1u << 20;
constexpr uint32_t kMaxLemmaBytes = 1u << 16;

bool ParseFloat(std::string_view text, float *value) {
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), *value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

StoreKind ParseKindName(std::string_view name) {
  if (name == "general") return StoreKind::kGeneral;
  if (name == "domain") return StoreKind::kDomain;
  throw DataError("unknown store kind '" + std::string(name) + "'");
}

}  // namespace

std::string_view StoreKindName(StoreKind kind) {
  return kind == StoreKind::kDomain ? "domain" : "general";
}

EmbeddingStore::EmbeddingStore(StoreKind kind, uint32_t dim)
    : kind_(kind), dim_(dim) {
  if (dim == 0) throw DataError("embedding dimension must be positive");
}

void EmbeddingStore::Add(std::string lemma, std::span<const float> vector,
                         std::optional<float> stdev) {
  if (vector.size() != dim_) {
    throw DataError("vector for '" + lemma + "' has length " +
                    std::to_string(vector.size()) + ", store dim is " +
                    std::to_string(dim_));
  }
  if (has_stdevs() != stdev.has_value()) {
    throw DataError(has_stdevs() ? "domain store record needs a stddev"
                                 : "general store record cannot carry a stddev");
  }
  if (stdev && !(std::isfinite(*stdev) && *stdev >= 0.0f)) {
    throw DataError("stddev for '" + lemma + "' must be finite and >= 0");
  }
  if (index_.count(lemma)) {
    throw DataError("duplicate lemma '" + lemma + "' in embedding store");
  }
  index_.emplace(lemma, lemmas_.size());
  lemmas_.push_back(std::move(lemma));
  data_.insert(data_.end(), vector.begin(), vector.end());
  if (stdev) stdevs_.push_back(*stdev);
}

const float *EmbeddingStore::Find(std::string_view lemma) const {
  auto it = index_.find(std::string(lemma));
  if (it == index_.end()) return nullptr;
  return data_.data() + it->second * dim_;
}

std::optional<float> EmbeddingStore::FindStdev(std::string_view lemma) const {
  if (!has_stdevs()) return std::nullopt;
  auto it = index_.find(std::string(lemma));
  if (it == index_.end()) return std::nullopt;
  return stdevs_[it->second];
}

EmbeddingStore LoadStore(std::istream &in,
                         std::optional<uint32_t> expected_dim) {
  LittleEndianReader r(in);
  if (r.Bytes(kMagic.size(), "magic") != kMagic) {
    throw FormatError(0, "bad magic, expected EMBS1");
  }
  uint64_t at = r.offset();
  uint8_t kind_byte = r.U8("kind");
  if (kind_byte > 1) {
    throw FormatError(at, "unknown store kind " + std::to_string(kind_byte));
  }
  at = r.offset();
  uint32_t dim = r.U32("dim");
  if (dim == 0 || dim > kMaxDim) {
    throw FormatError(at, "invalid dim " + std::to_string(dim));
  }
  if (expected_dim && dim != *expected_dim) {
    throw FormatError(at, "dim mismatch: store has " + std::to_string(dim) +
                              ", expected " + std::to_string(*expected_dim));
  }
  uint32_t count = r.U32("record count");

  EmbeddingStore store(static_cast<StoreKind>(kind_byte), dim);
  std::vector<float> vec(dim);
  for (uint32_t i = 0; i < count; ++i) {
    uint64_t record_at = r.offset();
    uint32_t len = r.U32("lemma length");
    if (len == 0 || len > kMaxLemmaBytes) {
      throw FormatError(record_at, "invalid lemma length " + std::to_string(len));
    }
    std::string lemma = r.Bytes(len, "lemma");
    for (uint32_t d = 0; d < dim; ++d) vec[d] = r.F32("vector");
    std::optional<float> stdev;
    if (store.has_stdevs()) stdev = r.F32("stddev");
    try {
      store.Add(std::move(lemma), vec, stdev);
    } catch (const DataError &e) {
      throw FormatError(record_at, e.what());
    }
  }
  if (!r.AtEnd()) throw FormatError(r.offset(), "trailing bytes after records");
  return store;
}

void SaveStore(const EmbeddingStore &store, std::ostream &out) {
  LittleEndianWriter w(out);
  w.Bytes(kMagic);
  w.U8(static_cast<uint8_t>(store.kind()));
  w.U32(store.dim());
  w.U32(static_cast<uint32_t>(store.size()));
  for (size_t i = 0; i < store.size(); ++i) {
    w.String(store.lemma(i));
    for (float v : store.vector(i)) w.F32(v);
    if (store.has_stdevs()) w.F32(store.stdev(i));
  }
}

EmbeddingStore LoadTextStore(std::istream &in,
                             std::optional<uint32_t> expected_dim,
                             const std::string &source) {
  std::string raw;
  int64_t line_no = 0;
  std::optional<EmbeddingStore> store;
  std::vector<float> vec;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = StripCr(raw);
    if (line.empty()) continue;
    std::vector<std::string> cols = Split(line, '\t');
    if (!store) {
      int64_t dim = 0;
      if (cols.size() != 3 || cols[0] != kTextMagic) {
        throw ParseError(source, line_no, "expected #EMBS1-text header");
      }
      auto [ptr, ec] = std::from_chars(
          cols[2].data(), cols[2].data() + cols[2].size(), dim);
      if (ec != std::errc() || dim <= 0 || dim > kMaxDim) {
        throw ParseError(source, line_no, "invalid dim '" + cols[2] + "'");
      }
      if (expected_dim && dim != *expected_dim) {
        throw ParseError(source, line_no, "dim mismatch");
      }
      try {
        store.emplace(ParseKindName(cols[1]), static_cast<uint32_t>(dim));
      } catch (const DataError &e) {
        throw ParseError(source, line_no, e.what());
      }
      vec.resize(store->dim());
      continue;
    }
    if (line.front() == '#') continue;
    size_t want = 1 + store->dim() + (store->has_stdevs() ? 1 : 0);
    if (cols.size() != want) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(want) + " columns, got " +
                           std::to_string(cols.size()));
    }
    for (uint32_t d = 0; d < store->dim(); ++d) {
      if (!ParseFloat(cols[1 + d], &vec[d])) {
        throw ParseError(source, line_no, "bad float '" + cols[1 + d] + "'");
      }
    }
    std::optional<float> stdev;
    if (store->has_stdevs()) {
      float s = 0;
      if (!ParseFloat(cols.back(), &s)) {
        throw ParseError(source, line_no, "bad stddev '" + cols.back() + "'");
      }
      stdev = s;
    }
    try {
      store->Add(ToLowerUtf8(cols[0]), vec, stdev);
    } catch (const DataError &e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  if (!store) throw ParseError(source, line_no, "empty text store");
  return std::move(*store);
}

void SaveTextStore(const EmbeddingStore &store, std::ostream &out) {
  out << kTextMagic << '\t' << StoreKindName(store.kind()) << '\t'
      << store.dim() << '\n';
  char buf[32];
  const auto put = [&](float v) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out << '\t' << std::string_view(buf, ptr - buf);
  };
  for (size_t i = 0; i < store.size(); ++i) {
    out << store.lemma(i);
    for (float v : store.vector(i)) put(v);
    if (store.has_stdevs()) put(store.stdev(i));
    out << '\n';
  }
}

Stoplist::Stoplist()
    : lemmas_{"brez", "do",   "iz",  "z",     "s",   "za",  "h",   "k",
              "proti", "kljub", "čez", "skozi", "zoper", "po", "o",  "pri",
              "na",  "ob",   "v",   "med",   "nad", "pod", "pred"} {}

Stoplist::Stoplist(std::unordered_set<std::string> lemmas)
    : lemmas_(std::move(lemmas)) {}

Stoplist LoadStoplist(std::istream &in) {
  std::unordered_set<std::string> lemmas;
  std::string raw;
  while (std::getline(in, raw)) {
    std::string_view line = StripCr(raw);
    size_t b = line.find_first_not_of(" \t");
    if (b == std::string_view::npos || line[b] == '#') continue;
    size_t e = line.find_last_not_of(" \t");
    lemmas.insert(ToLowerUtf8(line.substr(b, e - b + 1)));
  }
  return Stoplist(std::move(lemmas));
}

TermVector ComputeTermVector(std::span<const std::string> lemmas,
                             const EmbeddingStore &store,
                             const Stoplist &stop) {
  TermVector out;
  out.values.assign(store.dim(), 0.0);
  int64_t eligible = 0;
  int64_t found = 0;
  for (const std::string &lemma : lemmas) {
    if (stop.contains(lemma)) continue;
    ++eligible;
    const float *v = store.Find(lemma);
    if (v == nullptr) continue;
    ++found;
    for (uint32_t d = 0; d < store.dim(); ++d) out.values[d] += v[d];
  }
  if (found == 0) return out;
  for (double &x : out.values) x /= static_cast<double>(found);
  out.coverage = static_cast<double>(found) / static_cast<double>(eligible);
  return out;
}

double ComputeTermStdev(std::span<const std::string> lemmas,
                        const EmbeddingStore &store, const Stoplist &stop) {
  if (!store.has_stdevs()) {
    throw UsageError("term stddev requires a domain store");
  }
  double sum = 0.0;
  int64_t found = 0;
  for (const std::string &lemma : lemmas) {
    if (stop.contains(lemma)) continue;
    std::optional<float> s = store.FindStdev(lemma);
    if (!s) continue;
    sum += *s;
    ++found;
  }
  return found == 0 ? 0.0 : sum / static_cast<double>(found);
}

}  // namespace termex
