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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "prosody/codec.h"
#include "prosody/decode.h"
#include "prosody/metrics.h"
#include "prosody/synth.h"
#include "prosody/toy_model.h"
#include "prosody/turns.h"

namespace prosody {
namespace {

const SynthData& Data() {
  static const SynthData d = [] {
    SynthSpec spec;
    spec.seed = 3;
    spec.n_turns = 64;
    return SynthCorpus(spec);
  }();
  return d;
}

std::vector<std::string> WordsOf(const Turn& t) {
  std::vector<std::string> out;
  for (const auto& w : t.Words()) out.push_back(w.text);
  return out;
}

void BM_EncodeTurn(benchmark::State& state) {
  const auto scheme = static_cast<Scheme>(state.range(0));
  const Codec codec(scheme, MakeBaseVocabulary(Data().vocabulary));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(codec.EncodeTurn(Data().turns[i++ % Data().turns.size()]));
  }
}
BENCHMARK(BM_EncodeTurn)->Arg(static_cast<int>(Scheme::kRaw))->Arg(static_cast<int>(Scheme::kCompact))
    ->Arg(static_cast<int>(Scheme::kBits));

void BM_OracleDecode(benchmark::State& state) {
  const Codec codec(Scheme::kCompact, MakeBaseVocabulary(Data().vocabulary));
  const Turn& turn = Data().turns[0];
  const auto model = MakeOracleModel(turn, codec);
  const auto words = WordsOf(turn);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ConstrainedDecode(*model, Data().features[0], words, codec));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(words.size()));
}
BENCHMARK(BM_OracleDecode);

void BM_ToyDecode(benchmark::State& state) {
  const Codec codec(Scheme::kCompact, MakeBaseVocabulary(Data().vocabulary));
  ToyConfig config;
  config.arch.width = static_cast<std::size_t>(state.range(0));
  const ToyModel model(config, codec.vocab().tokens(), kSynthChannels);
  const auto words = WordsOf(Data().turns[0]);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ConstrainedDecode(model, Data().features[0], words, codec));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(words.size()));
}
BENCHMARK(BM_ToyDecode)->Arg(16)->Arg(64);

void BM_CohensKappa(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<int> g(state.range(0)), p(state.range(0));
  for (auto& x : g) x = static_cast<int>(rng() % 3);
  for (auto& x : p) x = static_cast<int>(rng() % 3);
  for (auto _ : state) benchmark::DoNotOptimize(CohensKappa(g, p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CohensKappa)->Arg(1 << 10)->Arg(1 << 16);

void BM_CompileTurns(benchmark::State& state) {
  const Codec codec(Scheme::kCompact, MakeBaseVocabulary(Data().vocabulary));
  const TokenCounter counter = [&codec](std::span<const Word> w) { return codec.CountTokens(w); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(CompileTurns(Data().corpus, TurnParams{}, counter));
  }
}
BENCHMARK(BM_CompileTurns);

}  // namespace
}  // namespace prosody

BENCHMARK_MAIN();
