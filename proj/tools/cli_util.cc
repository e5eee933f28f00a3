/*
 * Copyright 2026 The Prosody Tagger Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli_util.h"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>

#include "prosody/error.h"
#include "prosody/io.h"

namespace prosody::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::ifstream OpenIn(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cli", "cannot open " + path);
  return in;
}

std::ofstream OpenOut(const std::string& path, bool binary) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw InputError("cli", "cannot write " + path);
  return out;
}

std::string JoinPath(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

std::string FeaturePath(const std::string& dir, std::size_t turn) {
  char name[32];
  std::snprintf(name, sizeof(name), "turn-%05zu.prft", turn);
  return JoinPath(dir, name);
}

std::string PitchPath(const std::string& dir, const std::string& source) {
  return JoinPath(dir, source + ".f0");
}

std::string ManifestPathFor(const std::string& corpus_path) {
  fs::path p(corpus_path);
  return (p.parent_path() / (p.stem().string() + ".manifest.json")).string();
}

Corpus LoadCorpus(const std::string& path) {
  std::ifstream in = OpenIn(path);
  Corpus corpus = ReadCorpusJsonl(in);
  const std::string manifest = ManifestPathFor(path);
  if (fs::exists(manifest)) {
    std::ifstream m = OpenIn(manifest);
    try {
      ApplyCorpusManifest(json::parse(m), corpus);
    } catch (const json::exception& e) {
      throw InputError("corpus_ingest", manifest + ": " + e.what());
    }
  }
  if (corpus.sources.empty()) throw InputError("corpus_ingest", path + " holds no words");
  return corpus;
}

std::vector<std::string> CorpusWords(const Corpus& corpus) {
  std::vector<std::string> out;
  for (const auto& s : corpus.sources) {
    for (const auto& iu : s.ius) {
      for (const auto& w : iu.words) out.push_back(w.text);
    }
  }
  return out;
}

Scheme SchemeOrThrow(const std::string& s) {
  auto v = ParseScheme(s);
  if (!v) throw InputError("cli", "unknown scheme '" + s + "' (raw, compact, bits)");
  return *v;
}

Task TaskOrThrow(const std::string& s) {
  auto v = ParseTask(s);
  if (!v) throw InputError("cli", "unknown task '" + s + "' (full, boundary, prototype, emphasis)");
  return *v;
}

Codec MakeCodec(const std::string& scheme, const std::string& task, const Corpus& corpus) {
  const auto words = CorpusWords(corpus);
  return Codec(SchemeOrThrow(scheme), TaskOrThrow(task), MakeBaseVocabulary(words));
}

void WriteRunManifest(const std::string& out, const std::string& command,
                      const std::string& effective_config, const std::vector<std::string>& inputs) {
  json checksums = json::object();
  for (const auto& path : inputs) {
    if (fs::is_regular_file(path)) checksums[path] = FileChecksum(path);
  }
  json schemas = json::object();
  for (const auto& s : kSchemas) schemas[s.format] = s.version;
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  json manifest = {{"schema", "run_manifest"},
                   {"version", 1},
                   {"command", command},
                   {"config", effective_config},
                   {"config_hash", Fnv1aHex(effective_config)},
                   {"inputs", checksums},
                   {"versions", {{"prosody", PROSODY_VERSION}, {"schemas", schemas}}},
                   {"created_utc", stamp}};
  std::string path = out;
  if (fs::is_directory(out)) path = JoinPath(out, "run.json");
  else path += ".run.json";
  OpenOut(path) << manifest.dump(2) << '\n';
}

void Warn(const std::string& module, const std::string& message) {
  std::cerr << "warning [" << module << "]: " << message << '\n';
}

}  // namespace prosody::cli
