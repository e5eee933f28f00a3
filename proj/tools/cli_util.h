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

#ifndef PROSODY_TOOLS_CLI_UTIL_H_
#define PROSODY_TOOLS_CLI_UTIL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <fstream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "prosody/codec.h"
#include "prosody/corpus.h"

namespace prosody::cli {

std::ifstream OpenIn(const std::string& path);
// Creates missing parent directories.
std::ofstream OpenOut(const std::string& path, bool binary = false);
std::string JoinPath(const std::string& dir, const std::string& name);

// "<dir>/turn-00012.prft"
std::string FeaturePath(const std::string& dir, std::size_t turn);
// "<dir>/<source>.f0"
std::string PitchPath(const std::string& dir, const std::string& source);
// corpus.jsonl -> corpus.manifest.json
std::string ManifestPathFor(const std::string& corpus_path);

// Reads corpus JSONL and, when present, its manifest.
Corpus LoadCorpus(const std::string& path);
// Every word text in corpus order.
std::vector<std::string> CorpusWords(const Corpus& corpus);
Codec MakeCodec(const std::string& scheme, const std::string& task, const Corpus& corpus);
Scheme SchemeOrThrow(const std::string& s);
Task TaskOrThrow(const std::string& s);

// Writes "<out>.run.json": command, effective config and its hash, input
// checksums, versions and a creation time.
void WriteRunManifest(const std::string& out, const std::string& command,
                      const std::string& effective_config, const std::vector<std::string>& inputs);

void Warn(const std::string& module, const std::string& message);

// Runs f(i) for i in [0, n) on up to `jobs` threads. The first exception is
// rethrown after all workers stop.
template <typename F>
void ParallelFor(std::size_t n, int jobs, F&& f) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace prosody::cli

#endif  // PROSODY_TOOLS_CLI_UTIL_H_
