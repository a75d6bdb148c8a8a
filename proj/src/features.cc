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

#include "termex/features.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "termex/binary_io.h"
#include "termex/error.h"

namespace termex {
namespace {

constexpr std::string_view kMatrixMagic = "TEXF1";

constexpr char GroupLetter(FeatureGroup g) {
  switch (g) {
    case FeatureGroup::kContextual:
      return 'C';
    case FeatureGroup::kLinguistic:
      return 'P';
    case FeatureGroup::kStatistical:
      return 'S';
  }
  return '?';
}

uint8_t Bit(FeatureGroup g) { return 1u << static_cast<int>(g); }

}  // namespace

GroupMask GroupMask::Parse(std::string_view text) {
  uint8_t bits = 0;
  for (char c : text) {
    switch (c) {
      case 'C':
      case 'c':
        bits |= Bit(FeatureGroup::kContextual);
        break;
      case 'P':
      case 'p':
        bits |= Bit(FeatureGroup::kLinguistic);
        break;
      case 'S':
      case 's':
        bits |= Bit(FeatureGroup::kStatistical);
        break;
      case ',':
      case '&':
      case ' ':
        break;
      default:
        throw UsageError("unknown feature group '" + std::string(1, c) +
                         "' in '" + std::string(text) + "' (use C, P, S)");
    }
  }
  if (bits == 0) throw UsageError("feature group set must be nonempty");
  return GroupMask(bits);
}

GroupMask GroupMask::FromBits(uint8_t bits) {
  if (bits == 0 || bits > 0b111) {
    throw DataError("invalid feature group mask " + std::to_string(bits));
  }
  return GroupMask(bits);
}

std::string GroupMask::ToString() const {
  // Letter order follows the ablation table: C, then P before S, except
  // that S&P is spelled with S first.
  const bool c = contains(FeatureGroup::kContextual);
  const bool p = contains(FeatureGroup::kLinguistic);
  const bool s = contains(FeatureGroup::kStatistical);
  if (!c && p && s) return "S&P";
  std::string out;
  if (c) out += "C";
  if (p) out += out.empty() ? "P" : "&P";
  if (s) out += out.empty() ? "S" : "&S";
  return out;
}

std::array<GroupMask, 7> AblationOrder() {
  return {GroupMask::Parse("CPS"), GroupMask::Parse("CP"),
          GroupMask::Parse("CS"),  GroupMask::Parse("SP"),
          GroupMask::Parse("C"),   GroupMask::Parse("S"),
          GroupMask::Parse("P")};
}

FeatureSchema::FeatureSchema(uint32_t embedding_dim)
    : embedding_dim_(embedding_dim) {
  if (embedding_dim == 0) throw DataError("embedding dim must be positive");
  const auto add = [&](std::string name, FeatureGroup g) {
    names_.push_back(std::move(name));
    groups_.push_back(g);
  };
  for (const char *prefix : {"StartUD_", "EndUD_", "AnywhereUD_", "CountOfUD_"}) {
    for (UdTag tag : kAllUdTags) {
      add(prefix + std::string(UdTagName(tag)), FeatureGroup::kLinguistic);
    }
  }
  add("NoUniquePos", FeatureGroup::kLinguistic);
  add("TermGenFreq", FeatureGroup::kStatistical);
  add("TermDomFreq", FeatureGroup::kStatistical);
  add("TermLength", FeatureGroup::kStatistical);
  for (uint32_t d = 0; d < embedding_dim; ++d) {
    add("domElmo_" + std::to_string(d), FeatureGroup::kContextual);
  }
  for (uint32_t d = 0; d < embedding_dim; ++d) {
    add("genElmo_" + std::to_string(d), FeatureGroup::kContextual);
  }
  add("elmoSim", FeatureGroup::kContextual);
  add("elmoTermSim", FeatureGroup::kContextual);
  add("elmoStDev", FeatureGroup::kContextual);

  uint64_t h = kFnvOffset;
  for (size_t i = 0; i < names_.size(); ++i) {
    h = Fnv1a(names_[i], h);
    const char sep[2] = {'\x1f', GroupLetter(groups_[i])};
    h = Fnv1a(std::string_view(sep, 2), h);
  }
  fingerprint_ = h;
}

std::vector<uint32_t> FeatureSchema::Columns(GroupMask mask) const {
  std::vector<uint32_t> cols;
  for (size_t i = 0; i < groups_.size(); ++i) {
    if (mask.contains(groups_[i])) cols.push_back(static_cast<uint32_t>(i));
  }
  return cols;
}

LinguisticVector LinguisticFeatures(std::span<const UdTag> pos) {
  LinguisticVector v{};
  if (pos.empty()) throw DataError("linguistic features need a POS sequence");
  v[FeatureSchema::kStartUd + Index(pos.front())] = 1.0;
  v[FeatureSchema::kEndUd + Index(pos.back())] = 1.0;
  for (size_t i = 1; i + 1 < pos.size(); ++i) {
    v[FeatureSchema::kAnywhereUd + Index(pos[i])] = 1.0;
  }
  TagSet distinct;
  for (UdTag t : pos) {
    v[FeatureSchema::kCountOfUd + Index(t)] += 1.0;
    distinct.insert(t);
  }
  v[FeatureSchema::kNoUniquePos] = static_cast<double>(distinct.size());
  return v;
}

double RelLogFreqSum(std::span<const std::string> lemmas,
                     const FrequencyTable &table, const Stoplist &stop) {
  if (table.total <= 0) throw DataError("frequency table total must be > 0");
  const double n = static_cast<double>(table.total);
  double sum = 0.0;
  for (const std::string &lemma : lemmas) {
    if (stop.contains(lemma)) continue;
    int64_t f = table.count(lemma);
    if (f < 1) f = 1;
    sum += std::log(static_cast<double>(f) / n);
  }
  return sum;
}

std::array<double, kStatisticalWidth> StatisticalFeatures(
    const Candidate &c, const FrequencyTable &general,
    const FrequencyTable &domain, const Stoplist &stop) {
  return {RelLogFreqSum(c.lemmas, general, stop),
          RelLogFreqSum(c.lemmas, domain, stop),
          static_cast<double>(c.lemmas.size())};
}

double Cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DataError("cosine of unequal lengths");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  double c = dot / (std::sqrt(nu) * std::sqrt(nv));
  return std::clamp(c, -1.0, 1.0);
}

std::vector<double> ContextualFeatures(const Candidate &c,
                                       const EmbeddingStore &domain_store,
                                       const EmbeddingStore &general_store,
                                       std::span<const double> seed_vector,
                                       const Stoplist &stop) {
  if (domain_store.kind() != StoreKind::kDomain) {
    throw DataError("domain embedding store has kind general");
  }
  if (general_store.kind() != StoreKind::kGeneral) {
    throw DataError("general embedding store has kind domain");
  }
  const uint32_t dim = domain_store.dim();
  if (general_store.dim() != dim || seed_vector.size() != dim) {
    throw DataError("embedding dimension mismatch: domain " +
                    std::to_string(dim) + ", general " +
                    std::to_string(general_store.dim()) + ", seed " +
                    std::to_string(seed_vector.size()));
  }
  TermVector dom = ComputeTermVector(c.lemmas, domain_store, stop);
  TermVector gen = ComputeTermVector(c.lemmas, general_store, stop);
  std::vector<double> out;
  out.reserve(2 * dim + 3);
  out.insert(out.end(), dom.values.begin(), dom.values.end());
  out.insert(out.end(), gen.values.begin(), gen.values.end());
  out.push_back(Cosine(dom.values, gen.values));
  out.push_back(Cosine(dom.values, seed_vector));
  out.push_back(ComputeTermStdev(c.lemmas, domain_store, stop));
  return out;
}

std::vector<double> SeedVector(std::string_view seed_term,
                               const EmbeddingStore &domain_store,
                               const Stoplist &stop) {
  LemmaSeq lemmas = SplitNonEmpty(ToLowerUtf8(seed_term), ' ');
  return ComputeTermVector(lemmas, domain_store, stop).values;
}

void FeatureMatrix::AppendRow(std::span<const double> values, Label label,
                              RowKey key) {
  if (values.size() != cols()) {
    throw DataError("feature row has " + std::to_string(values.size()) +
                    " columns, schema has " + std::to_string(cols()));
  }
  for (double v : values) data_.push_back(static_cast<float>(v));
  labels_.push_back(label);
  keys_.push_back(std::move(key));
}

void FeatureMatrix::AppendRow(std::span<const float> values, Label label,
                              RowKey key) {
  if (values.size() != cols()) {
    throw DataError("feature row has " + std::to_string(values.size()) +
                    " columns, schema has " + std::to_string(cols()));
  }
  data_.insert(data_.end(), values.begin(), values.end());
  labels_.push_back(label);
  keys_.push_back(std::move(key));
}

FeatureMatrix FeatureMatrix::FromParts(FeatureSchema schema,
                                       std::vector<float> data,
                                       std::vector<Label> labels,
                                       std::vector<RowKey> keys) {
  FeatureMatrix m(std::move(schema));
  if (labels.size() != keys.size() ||
      data.size() != labels.size() * m.cols()) {
    throw DataError("feature matrix parts have inconsistent sizes");
  }
  m.data_ = std::move(data);
  m.labels_ = std::move(labels);
  m.keys_ = std::move(keys);
  return m;
}

FeatureMatrix FeatureMatrix::Concat(
    std::span<const FeatureMatrix *const> parts) {
  if (parts.empty()) throw DataError("nothing to concatenate");
  FeatureMatrix out(parts.front()->schema());
  size_t rows = 0;
  for (const FeatureMatrix *m : parts) {
    if (m->schema().fingerprint() != out.schema().fingerprint()) {
      throw DataError("feature schema mismatch across matrices");
    }
    rows += m->rows();
  }
  out.data_.reserve(rows * out.cols());
  for (const FeatureMatrix *m : parts) {
    out.data_.insert(out.data_.end(), m->data_.begin(), m->data_.end());
    out.labels_.insert(out.labels_.end(), m->labels_.begin(), m->labels_.end());
    out.keys_.insert(out.keys_.end(), m->keys_.begin(), m->keys_.end());
  }
  return out;
}

FeatureMatrix Assemble(const CandidateSet &cands, const FeatureInputs &in) {
  FeatureSchema schema(in.domain_store.dim());
  std::vector<double> seed =
      SeedVector(in.seed_term, in.domain_store, in.stoplist);
  FeatureMatrix m(schema);
  std::vector<double> row(schema.size());
  for (const Candidate &c : cands.candidates()) {
    LinguisticVector ling = LinguisticFeatures(c.canonical_pos);
    auto stat = StatisticalFeatures(c, in.general_freq, in.domain_freq,
                                    in.stoplist);
    std::vector<double> ctx = ContextualFeatures(
        c, in.domain_store, in.general_store, seed, in.stoplist);
    auto it = std::copy(ling.begin(), ling.end(), row.begin());
    it = std::copy(stat.begin(), stat.end(), it);
    std::copy(ctx.begin(), ctx.end(), it);
    m.AppendRow(std::span<const double>(row), c.label,
                RowKey{cands.domain_name(), c.lemmas});
  }
  return m;
}

void SaveFeatureMatrix(const FeatureMatrix &m, std::ostream &out,
                       std::string_view provenance) {
  LittleEndianWriter w(out);
  w.Bytes(kMatrixMagic);
  w.U32(m.schema().embedding_dim());
  w.U64(m.schema().fingerprint());
  w.U32(static_cast<uint32_t>(m.cols()));
  w.U64(m.rows());
  w.String(provenance);
  for (float v : m.data()) w.F32(v);
  for (size_t i = 0; i < m.rows(); ++i) {
    w.U8(static_cast<uint8_t>(m.labels()[i]));
    w.String(m.keys()[i].domain);
    w.String(Join(m.keys()[i].lemmas, " "));
  }
}

FeatureMatrix LoadFeatureMatrix(std::istream &in) {
  LittleEndianReader r(in);
  if (r.Bytes(kMatrixMagic.size(), "magic") != kMatrixMagic) {
    throw FormatError(0, "bad magic, expected TEXF1");
  }
  uint64_t at = r.offset();
  uint32_t dim = r.U32("embedding dim");
  if (dim == 0 || dim > (1u << 20)) {
    throw FormatError(at, "invalid embedding dim " + std::to_string(dim));
  }
  FeatureSchema schema(dim);
  at = r.offset();
  uint64_t fingerprint = r.U64("fingerprint");
  if (fingerprint != schema.fingerprint()) {
    throw FormatError(at, "feature schema fingerprint mismatch");
  }
  at = r.offset();
  uint32_t cols = r.U32("column count");
  if (cols != schema.size()) {
    throw FormatError(at, "column count " + std::to_string(cols) +
                              " does not match schema size " +
                              std::to_string(schema.size()));
  }
  uint64_t rows = r.U64("row count");
  r.String("provenance");
  std::vector<float> data;
  for (uint64_t i = 0; i < rows * cols; ++i) data.push_back(r.F32("matrix"));
  std::vector<Label> labels;
  std::vector<RowKey> keys;
  for (uint64_t i = 0; i < rows; ++i) {
    uint64_t label_at = r.offset();
    uint8_t label = r.U8("label");
    if (label > 2) {
      throw FormatError(label_at, "invalid label " + std::to_string(label));
    }
    labels.push_back(static_cast<Label>(label));
    RowKey key;
    key.domain = r.String("domain");
    key.lemmas = SplitNonEmpty(r.String("lemmas"), ' ');
    keys.push_back(std::move(key));
  }
  if (!r.AtEnd()) throw FormatError(r.offset(), "trailing bytes after matrix");
  return FeatureMatrix::FromParts(std::move(schema), std::move(data),
                                  std::move(labels), std::move(keys));
}

void WriteFeatureTsv(const FeatureMatrix &m, std::ostream &out,
                     std::span<const std::string> preamble) {
  for (const std::string &line : preamble) out << "# " << line << '\n';
  out << "domain\tlemmas\tlabel";
  for (const std::string &name : m.schema().names()) out << '\t' << name;
  out << '\n';
  for (size_t i = 0; i < m.rows(); ++i) {
    out << m.keys()[i].domain << '\t' << Join(m.keys()[i].lemmas, " ") << '\t'
        << LabelName(m.labels()[i]);
    for (float v : m.row(i)) out << '\t' << v;
    out << '\n';
  }
}

}  // namespace termex
