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

#include <random>

#include "oracles.h"
#include "prosody/error.h"
#include "prosody/synth.h"
#include "prosody/turns.h"
#include "test_support.h"

namespace prosody {
namespace {

using testing::MakeIu;
using testing::OneSource;

std::size_t WordCounter(std::span<const Word> words) { return words.size() + 2; }

TEST(CompileTurns, TwoShortIusMerge) {
  Corpus c = OneSource({MakeIu(6, 0.0, 0.5, Prototype::kContinuation),
                        MakeIu(6, 3.3, 0.5, Prototype::kConclusion)});
  const auto r = CompileTurns(c, TurnParams{}, WordCounter);
  ASSERT_EQ(r.turns.size(), 1u);
  EXPECT_EQ(r.turns[0].ius.size(), 2u);
  EXPECT_FALSE(r.turns[0].below_min_ius);
}

TEST(CompileTurns, LongPauseSplitsAndFlagsBoth) {
  Corpus c = OneSource({MakeIu(6, 0.0, 0.5, Prototype::kContinuation),
                        MakeIu(6, 5.0, 0.5, Prototype::kConclusion)});
  const auto r = CompileTurns(c, TurnParams{}, WordCounter);
  ASSERT_EQ(r.turns.size(), 2u);
  EXPECT_TRUE(r.turns[0].below_min_ius);
  EXPECT_TRUE(r.turns[1].below_min_ius);
}

// Greedy split point found by enumerating prefix durations directly: the
// longest prefix whose span stays within 30 s.
TEST(CompileTurns, FiveSevenSecondIusSplitAtLongestFittingPrefix) {
  std::vector<IntonationUnit> ius;
  std::vector<std::pair<double, double>> spans;
  for (int k = 0; k < 5; ++k) {
    const double start = k * 7.2;
    ius.push_back(MakeIu(7, start, 1.0, Prototype::kContinuation));
    spans.emplace_back(start, start + 7.0);
  }
  std::size_t expected = 0;
  for (std::size_t n = 1; n <= spans.size(); ++n) {
    if (spans[n - 1].second - spans[0].first <= 30.0) expected = n;
  }
  ASSERT_EQ(expected, 4u);

  const auto r = CompileTurns(OneSource(ius), TurnParams{}, WordCounter);
  ASSERT_EQ(r.turns.size(), 2u);
  EXPECT_EQ(r.turns[0].ius.size(), expected);
  EXPECT_LE(r.turns[0].Duration(), 30.0);
  EXPECT_TRUE(r.turns[1].below_min_ius);
}

TEST(CompileTurns, LoneOversizeIuIsFlaggedNotDropped) {
  Corpus c = OneSource({MakeIu(10, 0.0, 3.5, Prototype::kConclusion)});
  const auto r = CompileTurns(c, TurnParams{}, WordCounter);
  ASSERT_EQ(r.turns.size(), 1u);
  EXPECT_TRUE(r.turns[0].oversize);
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(CompileTurns, TokenBoundSplits) {
  TurnParams p;
  p.max_tokens = 10;
  Corpus c = OneSource({MakeIu(4, 0.0, 0.2, Prototype::kConclusion),
                        MakeIu(4, 1.0, 0.2, Prototype::kConclusion),
                        MakeIu(4, 2.0, 0.2, Prototype::kConclusion)});
  const auto r = CompileTurns(c, p, WordCounter);
  // Two IUs count 4 + 4 + 2 = 10 tokens, exactly the bound; a third would not fit.
  ASSERT_EQ(r.turns.size(), 2u);
  EXPECT_EQ(r.turns[0].ius.size(), 2u);
  EXPECT_EQ(r.turns[0].token_count, 10u);
  EXPECT_EQ(r.turns[1].ius.size(), 1u);
}

TEST(CompileTurns, RejectsNonPositiveParameters) {
  TurnParams p;
  p.max_pause_s = 0;
  EXPECT_THROW(CompileTurns(OneSource({MakeIu(1, 0, 1, Prototype::kConclusion)}), p, WordCounter),
               InputError);
}

TEST(CompileTurnsProperty, SoundOnRandomCorpora) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const Corpus c = oracle::RandomCorpus(rng);
    const TurnParams p = oracle::RandomParams(rng);
    const auto r = CompileTurns(c, p, oracle::ToyTokenCount);
    const std::string failure = oracle::TurnSoundness(c, p, r.turns);
    ASSERT_TRUE(failure.empty()) << "trial " << trial << ": " << failure;
  }
}

TEST(TurnStats, SingleTurn) {
  Corpus c = OneSource({MakeIu(3, 0.0, 0.3, Prototype::kConclusion)});
  const auto r = CompileTurns(c, TurnParams{}, WordCounter);
  const auto s = TurnStats(r.turns);
  EXPECT_EQ(s.SpeakerFraction(1), 1.0);
  EXPECT_NE(s.Render().find("1 speaker: 1 (100.0%)"), std::string::npos);
}

TEST(TurnStats, EmptyListThrows) { EXPECT_THROW(TurnStats({}), InputError); }

// Alternating speakers with multi-speaker turns disallowed: every turn has a
// single speaker by direct count over the generated words.
TEST(TurnStats, AlternatingSpeakersStaySeparated) {
  SynthSpec spec;
  spec.n_turns = 60;
  spec.alternate_speakers = true;
  const SynthData data = SynthCorpus(spec);
  TurnParams p;
  p.allow_multi_speaker = false;
  const auto r = CompileTurns(data.corpus, p, WordCounter);
  for (const auto& t : r.turns) {
    std::set<std::string> speakers;
    for (const auto& w : t.Words()) speakers.insert(w.speaker_id);
    ASSERT_EQ(speakers.size(), 1u);
  }
  EXPECT_EQ(TurnStats(r.turns).SpeakerFraction(1), 1.0);
}

TEST(CheckTurn, ReportsEachConstraint) {
  Corpus c = OneSource({MakeIu(2, 0.0, 0.5, Prototype::kContinuation, "a"),
                        MakeIu(2, 3.0, 0.5, Prototype::kConclusion, "b")});
  Turn t = testing::WholeSource(c);
  t.token_count = 500;
  const auto k = CheckTurn(t, TurnParams{});
  EXPECT_TRUE(k.duration);
  EXPECT_FALSE(k.tokens);
  EXPECT_FALSE(k.pause);
  EXPECT_TRUE(k.min_ius);
  EXPECT_FALSE(k.single_speaker);
}

}  // namespace
}  // namespace prosody
