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


#include "termex/manifest.h"

#include <cstdio>
#include <set>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "termex/error.h"

namespace termex {
namespace {

using nlohmann::json;

std::string Resolve(const std::filesystem::path &base, const std::string &p) {
  if (p.empty()) return p;
  std::filesystem::path path(p);
  if (path.is_absolute() || base.empty()) return path.lexically_normal().string();
  return (base / path).lexically_normal().string();
}

void CheckKeys(const json &obj, const std::set<std::string> &allowed,
               const std::string &where) {
  for (const auto &[key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw UsageError("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
T Get(const json &obj, const char *key, T fallback, const std::string &where) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception &) {
    throw UsageError("bad value for '" + std::string(key) + "' in " + where);
  }
}

std::string Required(const json &obj, const char *key,
                     const std::string &where) {
  std::string v = Get<std::string>(obj, key, "", where);
  if (v.empty()) {
    throw UsageError("missing '" + std::string(key) + "' in " + where);
  }
  return v;
}

}  // namespace

std::ifstream OpenInput(const std::string &path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw DataError("cannot open '" + path + "'");
  return in;
}

void WriteFileAtomic(const std::filesystem::path &path,
                     std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw DataError("cannot create directory '" +
                      path.parent_path().string() + "': " + ec.message());
    }
  }
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw DataError("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw DataError("cannot rename onto '" + path.string() + "': " +
                    ec.message());
  }
}

ExperimentConfig ParseConfig(std::string_view json_text,
                             const std::filesystem::path &base_dir,
                             const std::string &source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw DataError(source + ": invalid JSON: " + e.what());
  }
  if (!doc.is_object()) throw DataError(source + ": expected a JSON object");
  CheckKeys(doc,
            {"domains", "general_store", "general_freq", "stoplist",
             "test_domain", "groups", "source", "max_len", "min_chars",
             "permissive_adv_adp", "c", "loss", "seed", "balanced",
             "text_store"},
            source);

  ExperimentConfig cfg;
  auto domains = doc.find("domains");
  if (domains == doc.end() || !domains->is_array()) {
    throw UsageError(source + ": 'domains' must be an array");
  }
  for (const json &d : *domains) {
    if (!d.is_object()) throw UsageError(source + ": domain entry not an object");
    const std::string where = source + " domain entry";
    CheckKeys(d, {"name", "corpus", "gold", "seed_term", "store", "freq"},
              where);
    DomainPaths p;
    p.name = Required(d, "name", where);
    p.corpus = Resolve(base_dir, Required(d, "corpus", where));
    p.gold = Resolve(base_dir, Required(d, "gold", where));
    p.seed_term = Required(d, "seed_term", where);
    p.store = Resolve(base_dir, Required(d, "store", where));
    p.freq = Resolve(base_dir, Get<std::string>(d, "freq", "", where));
    cfg.domains.push_back(std::move(p));
  }
  cfg.general_store = Resolve(base_dir, Required(doc, "general_store", source));
  cfg.general_freq = Resolve(base_dir, Required(doc, "general_freq", source));
  cfg.stoplist = Resolve(base_dir, Get<std::string>(doc, "stoplist", "", source));
  cfg.test_domain = Get<std::string>(doc, "test_domain", "", source);
  cfg.groups = GroupMask::Parse(Get<std::string>(doc, "groups", "C,P,S", source));
  cfg.source = ParseSource(Get<std::string>(doc, "source", "shallow", source));
  cfg.filter.max_len = Get<int>(doc, "max_len", cfg.filter.max_len, source);
  cfg.filter.min_chars = Get<int>(doc, "min_chars", cfg.filter.min_chars, source);
  cfg.filter.exclude_adp_adv_internal =
      !Get<bool>(doc, "permissive_adv_adp", false, source);
  cfg.c = Get<double>(doc, "c", cfg.c, source);
  cfg.loss = ParseLoss(Get<std::string>(doc, "loss", "hinge", source));
  cfg.seed = Get<uint64_t>(doc, "seed", cfg.seed, source);
  cfg.balanced = Get<bool>(doc, "balanced", false, source);
  cfg.text_store = Get<bool>(doc, "text_store", false, source);
  cfg.Validate();
  return cfg;
}

ExperimentConfig LoadConfig(const std::string &path) {
  std::ifstream in = OpenInput(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str(), std::filesystem::path(path).parent_path(),
                     path);
}

std::string ConfigToJson(const ExperimentConfig &cfg) {
  json doc;
  json domains = json::array();
  for (const DomainPaths &d : cfg.domains) {
    json entry = {{"name", d.name},
                  {"corpus", d.corpus},
                  {"gold", d.gold},
                  {"seed_term", d.seed_term},
                  {"store", d.store}};
    if (!d.freq.empty()) entry["freq"] = d.freq;
    domains.push_back(std::move(entry));
  }
  doc["domains"] = std::move(domains);
  doc["general_store"] = cfg.general_store;
  doc["general_freq"] = cfg.general_freq;
  if (!cfg.stoplist.empty()) doc["stoplist"] = cfg.stoplist;
  if (!cfg.test_domain.empty()) doc["test_domain"] = cfg.test_domain;
  doc["groups"] = cfg.groups.ToString();
  doc["source"] = std::string(SourceName(cfg.source));
  doc["max_len"] = cfg.filter.max_len;
  doc["min_chars"] = cfg.filter.min_chars;
  doc["permissive_adv_adp"] = !cfg.filter.exclude_adp_adv_internal;
  doc["c"] = cfg.c;
  doc["loss"] = std::string(LossName(cfg.loss));
  doc["seed"] = cfg.seed;
  doc["balanced"] = cfg.balanced;
  doc["text_store"] = cfg.text_store;
  return doc.dump(2) + "\n";
}

void RunManifest::AddConfigInputs(const ExperimentConfig &cfg) {
  for (const DomainPaths &d : cfg.domains) {
    const std::string prefix = "domain." + d.name + ".";
    inputs[prefix + "corpus"] = d.corpus;
    inputs[prefix + "gold"] = d.gold;
    inputs[prefix + "store"] = d.store;
    if (!d.freq.empty()) inputs[prefix + "freq"] = d.freq;
    settings[prefix + "seed_term"] = d.seed_term;
  }
  inputs["general_store"] = cfg.general_store;
  inputs["general_freq"] = cfg.general_freq;
  if (!cfg.stoplist.empty()) inputs["stoplist"] = cfg.stoplist;
  settings["groups"] = cfg.groups.ToString();
  settings["source"] = std::string(SourceName(cfg.source));
  settings["max_len"] = std::to_string(cfg.filter.max_len);
  settings["min_chars"] = std::to_string(cfg.filter.min_chars);
  settings["permissive_adv_adp"] =
      cfg.filter.exclude_adp_adv_internal ? "false" : "true";
  char c_buf[32];
  std::snprintf(c_buf, sizeof(c_buf), "%.17g", cfg.c);
  settings["c"] = c_buf;
  settings["loss"] = std::string(LossName(cfg.loss));
  settings["balanced"] = cfg.balanced ? "true" : "false";
  if (!cfg.test_domain.empty()) settings["test_domain"] = cfg.test_domain;
  seed = cfg.seed;
}

std::string RunManifest::ToJson() const {
  json doc;
  doc["tool"] = "termex";
  doc["version"] = std::string(kToolVersion);
  doc["subcommand"] = subcommand;
  doc["config"] = config_path;
  doc["inputs"] = inputs;
  doc["seed"] = seed;
  doc["settings"] = settings;
  return doc.dump();
}

std::string RunManifest::PreambleLine() const { return "manifest\t" + ToJson(); }

}  // namespace termex
