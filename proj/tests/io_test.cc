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

#include <gtest/gtest.h>

#include <sstream>

#include "prosody/error.h"
#include "prosody/features.h"
#include "prosody/io.h"
#include "prosody/synth.h"

namespace prosody {
namespace {

SynthData Small() {
  SynthSpec spec;
  spec.n_turns = 12;
  spec.seed = 21;
  return SynthCorpus(spec);
}

TEST(CorpusJsonl, RoundTripKeepsEveryField) {
  const SynthData d = Small();
  std::stringstream s;
  WriteCorpusJsonl(s, d.corpus);
  const Corpus c = ReadCorpusJsonl(s);
  ASSERT_EQ(c.sources.size(), d.corpus.sources.size());
  for (std::size_t i = 0; i < c.sources.size(); ++i) {
    const auto a = Flatten(c.sources[i].ius);
    const auto b = Flatten(d.corpus.sources[i].ius);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_EQ(a[k].text, b[k].text);
      EXPECT_DOUBLE_EQ(a[k].start_s, b[k].start_s);
      EXPECT_EQ(a[k].labels.emphasis, b[k].labels.emphasis);
      EXPECT_EQ(a[k].Combo(), b[k].Combo());
    }
  }
  EXPECT_TRUE(ValidateCorpus(c).ok());
}

TEST(CorpusJsonl, MalformedLineNamesIt) {
  std::istringstream in("{\"source\":\"a\"}\nnot json\n");
  EXPECT_THROW(ReadCorpusJsonl(in), InputError);
}

TEST(TurnManifest, RoundTrip) {
  const SynthData d = Small();
  std::stringstream s;
  WriteTurnManifest(s, d.corpus, d.turns, TurnParams{});
  const auto turns = ReadTurnManifest(s, d.corpus);
  ASSERT_EQ(turns.size(), d.turns.size());
  for (std::size_t i = 0; i < turns.size(); ++i) {
    EXPECT_EQ(turns[i].source, d.turns[i].source);
    EXPECT_EQ(turns[i].ius.size(), d.turns[i].ius.size());
  }
}

TEST(VocabularyManifest, RebuildsIdenticalCodecAndRejectsTampering) {
  const Codec c(Scheme::kBits, Task::kFull, MakeBaseVocabulary(Small().vocabulary));
  const auto m = VocabularyManifest(c);
  const Codec back = CodecFromManifest(m);
  EXPECT_EQ(back.vocab().tokens(), c.vocab().tokens());
  EXPECT_EQ(back.scheme(), Scheme::kBits);
  auto tampered = m;
  tampered["tokens"].back() = "<zzz>";  // label tokens are fixed by the scheme
  EXPECT_THROW(CodecFromManifest(tampered), InputError);
}

TEST(Sequences, RoundTrip) {
  const SynthData d = Small();
  const Codec c(Scheme::kCompact, MakeBaseVocabulary(d.vocabulary));
  std::vector<InterleavedSequence> seqs;
  for (const auto& t : d.turns) seqs.push_back(c.EncodeTurn(t));
  std::stringstream s;
  WriteSequences(s, seqs);
  const auto back = ReadSequences(s);
  ASSERT_EQ(back.size(), seqs.size());
  for (std::size_t i = 0; i < seqs.size(); ++i) EXPECT_EQ(back[i], seqs[i].tokens);
}

TEST(Predictions, RoundTripAndPairs) {
  TurnPrediction p;
  p.turn = 3;
  p.source = "s";
  p.words = {"a", "b"};
  p.speakers = {"x", "x"};
  p.gold = {ProsodicLabel{Boundary::kBegin, Prototype::kConclusion, Emphasis::kNone},
            ProsodicLabel{Boundary::kInside, Prototype::kConclusion, Emphasis::kEmphasized}};
  p.pred = {ProsodicLabel{Boundary::kBegin, std::nullopt, std::nullopt},
            ProsodicLabel{Boundary::kBegin, std::nullopt, std::nullopt}};
  std::stringstream s;
  WritePredictions(s, std::vector<TurnPrediction>{p});
  const auto back = ReadPredictions(s);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].gold, p.gold);
  EXPECT_EQ(back[0].pred, p.pred);
  const auto pairs = ToPairs(back);
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_TRUE(pairs[0].turn_initial);
  EXPECT_FALSE(pairs[1].turn_initial);
  EXPECT_EQ(pairs[1].speaker_id, "x");

  EXPECT_THROW(ToPairs(std::vector<TurnPrediction>{p, p}), InputError);
}

TEST(Features, BinaryRoundTripAndBadMagic) {
  AudioFeatures f(3, 2, 25.0);
  f.at(2, 1) = 1.5f;
  std::stringstream s;
  WriteFeatures(s, f);
  const AudioFeatures g = ReadFeatures(s);
  EXPECT_EQ(g.values, f.values);
  EXPECT_EQ(g.frame_rate, 25.0);
  std::istringstream bad("XXXX");
  EXPECT_THROW(ReadFeatures(bad), InputError);
}

TEST(Checksum, Fnv1aKnownValues) {
  EXPECT_EQ(Fnv1aHex(""), "cbf29ce484222325");
  EXPECT_EQ(Fnv1aHex("a"), "af63dc4c8601ec8c");
}

}  // namespace
}  // namespace prosody
