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


// Experiment configuration files, run manifests and file output.

#ifndef TERMEX_MANIFEST_H_
#define TERMEX_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "termex/eval.h"

namespace termex {

inline constexpr std::string_view kToolVersion = "1.0.0";

// Opens `path` for reading; DataError naming the path on failure.
std::ifstream OpenInput(const std::string &path, bool binary = false);

// Writes through a temporary file in the same directory, then renames it
// over `path`. Creates missing parent directories.
void WriteFileAtomic(const std::filesystem::path &path,
                     std::string_view contents);

// Reads a JSON experiment config. Relative paths resolve against the
// config file's directory. Throws UsageError on unknown keys or bad values,
// DataError when the file cannot be read or parsed.
ExperimentConfig LoadConfig(const std::string &path);
ExperimentConfig ParseConfig(std::string_view json_text,
                             const std::filesystem::path &base_dir,
                             const std::string &source = "<config>");
std::string ConfigToJson(const ExperimentConfig &cfg);

struct RunManifest {
  std::string subcommand;
  std::string config_path;
  // Role -> resolved path, e.g. "domain.kem.corpus".
  std::map<std::string, std::string> inputs;
  uint64_t seed = 0;
  // Option name -> value as given.
  std::map<std::string, std::string> settings;

  void AddConfigInputs(const ExperimentConfig &cfg);
  // Single-line JSON with sorted keys.
  std::string ToJson() const;
  // "manifest\t<json>", for "# " preambles.
  std::string PreambleLine() const;
};

}  // namespace termex

#endif  // TERMEX_MANIFEST_H_
