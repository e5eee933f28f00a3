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
#include "prosody/metrics.h"

namespace prosody {
namespace {

TEST(CohensKappa, PerfectAgreement) {
  const std::vector<int> g = {0, 1, 2, 1, 0, 2};
  EXPECT_DOUBLE_EQ(CohensKappa(g, g), 1.0);
}

// 10 items, 8 agreements, both raters 50/50: p_o = 0.8, p_e = 0.5.
TEST(CohensKappa, ConstructedTwoByTwo) {
  const std::vector<int> g = {1, 1, 1, 1, 1, 0, 0, 0, 0, 0};
  const std::vector<int> p = {1, 1, 1, 1, 0, 1, 0, 0, 0, 0};
  const auto t = oracle::Tabulate(g, p, 2);
  EXPECT_DOUBLE_EQ((t.counts[0][0] + t.counts[1][1]) / t.n, 0.8);
  EXPECT_NEAR(CohensKappa(g, p), 0.6, 1e-12);
}

TEST(CohensKappa, Errors) {
  EXPECT_THROW(CohensKappa(std::vector<int>{1, 0}, std::vector<int>{1}), InputError);
  EXPECT_THROW(CohensKappa(std::vector<int>{}, std::vector<int>{}), InputError);
}

TEST(CohensKappa, SingleSharedCategoryIsOne) {
  const std::vector<int> g = {2, 2, 2};
  EXPECT_DOUBLE_EQ(CohensKappa(g, g), 1.0);
}

TEST(CohensKappa, MatchesContingencyOracleOnRandomLists) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + trial % 3;
    std::vector<int> g(200), p(200);
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] = static_cast<int>(rng() % k);
      p[i] = rng() % 3 == 0 ? static_cast<int>(rng() % k) : g[i];
    }
    ASSERT_NEAR(CohensKappa(g, p), oracle::Kappa(oracle::Tabulate(g, p, k)), 1e-12);
    const auto bc = oracle::CountBinary(g, p, 0);
    const Scores s = BinaryScores(g, p, 0);
    ASSERT_NEAR(s.recall, bc.Recall(), 1e-12);
    ASSERT_NEAR(s.precision, bc.Precision(), 1e-12);
    ASSERT_NEAR(s.f1, bc.F1(), 1e-12);
    ASSERT_NEAR(s.accuracy, bc.Accuracy(), 1e-12);
  }
}

TEST(BinaryScores, UndefinedPrecisionIsZero) {
  const std::vector<int> g = {1, 1, 0};
  const std::vector<int> p = {1, 1, 1};
  const Scores s = BinaryScores(g, p, 0);
  EXPECT_EQ(s.precision, 0.0);
  EXPECT_EQ(s.recall, 0.0);
  EXPECT_EQ(s.f1, 0.0);
}

LabeledPair Pair(Boundary g, Boundary p, std::size_t turn, std::size_t word) {
  LabeledPair x;
  x.gold.boundary = g;
  x.pred.boundary = p;
  x.turn = turn;
  x.word = word;
  x.turn_initial = word == 0;
  return x;
}

TEST(SegmentationMetrics, AllCorrectBothVariants) {
  std::vector<LabeledPair> pairs;
  for (std::size_t t = 0; t < 3; ++t) {
    for (std::size_t w = 0; w < 6; ++w) {
      const Boundary b = w % 3 == 0 ? Boundary::kBegin : Boundary::kInside;
      pairs.push_back(Pair(b, b, t, w));
    }
  }
  EXPECT_DOUBLE_EQ(SegmentationMetrics(pairs, true).kappa, 1.0);
  EXPECT_DOUBLE_EQ(SegmentationMetrics(pairs, false).kappa, 1.0);
  EXPECT_EQ(SegmentationMetrics(pairs, false).n, 15u);
}

// Turn-initial words are always right, the rest are right 3 times in 5, so
// dropping the first words can only lower agreement.
TEST(SegmentationMetrics, WithoutStartIsNotAboveWithStart) {
  std::vector<LabeledPair> pairs;
  const Boundary g[] = {Boundary::kBegin, Boundary::kInside, Boundary::kBegin, Boundary::kInside,
                        Boundary::kInside, Boundary::kBegin};
  const Boundary p[] = {Boundary::kBegin, Boundary::kBegin, Boundary::kBegin, Boundary::kInside,
                        Boundary::kBegin, Boundary::kBegin};
  for (std::size_t t = 0; t < 4; ++t) {
    for (std::size_t w = 0; w < 6; ++w) pairs.push_back(Pair(g[w], p[w], t, w));
  }
  const double with = SegmentationMetrics(pairs, true).kappa;
  const double wos = SegmentationMetrics(pairs, false).kappa;
  EXPECT_LE(wos, with);

  std::vector<int> gi, pi;
  for (const auto& x : pairs) {
    if (x.turn_initial) continue;
    gi.push_back(static_cast<int>(*x.gold.boundary));
    pi.push_back(static_cast<int>(*x.pred.boundary));
  }
  EXPECT_NEAR(wos, oracle::Kappa(oracle::Tabulate(gi, pi, 2)), 1e-12);
}

TEST(SegmentationMetrics, NothingLeftAfterFiltering) {
  std::vector<LabeledPair> pairs = {Pair(Boundary::kBegin, Boundary::kBegin, 0, 0)};
  EXPECT_THROW(SegmentationMetrics(pairs, false), InputError);
}

TEST(EmphasisMetrics, AllCorrectAndAllFlipped) {
  std::vector<LabeledPair> right, flipped;
  for (std::size_t i = 0; i < 40; ++i) {
    LabeledPair x;
    x.gold.emphasis = i % 2 ? Emphasis::kEmphasized : Emphasis::kNone;
    x.pred.emphasis = x.gold.emphasis;
    right.push_back(x);
    x.pred.emphasis = i % 2 ? Emphasis::kNone : Emphasis::kEmphasized;
    flipped.push_back(x);
  }
  EXPECT_DOUBLE_EQ(EmphasisMetrics(right).accuracy, 1.0);
  EXPECT_NEAR(EmphasisMetrics(flipped).kappa, -1.0, 1e-12);
}

// Five IUs of two words each in one turn, all prototypes correct.
std::vector<LabeledPair> FiveIus() {
  std::vector<LabeledPair> pairs;
  const Prototype protos[] = {Prototype::kContinuation, Prototype::kConclusion,
                              Prototype::kRequestForResponse, Prototype::kContinuation,
                              Prototype::kConclusion};
  for (std::size_t u = 0; u < 5; ++u) {
    for (std::size_t k = 0; k < 2; ++k) {
      LabeledPair x;
      x.gold = {k == 0 ? Boundary::kBegin : Boundary::kInside, protos[u], Emphasis::kNone};
      x.pred = x.gold;
      x.word = 2 * u + k;
      x.turn_initial = x.word == 0;
      pairs.push_back(x);
    }
  }
  return pairs;
}

TEST(PrototypeEval, OracleFullCoverage) {
  const auto r = PrototypeEval(FiveIus());
  EXPECT_EQ(r.total_ius, 5u);
  EXPECT_DOUBLE_EQ(r.coverage, 1.0);
  EXPECT_DOUBLE_EQ(r.kappa, 1.0);
  EXPECT_DOUBLE_EQ(r.first_last_agreement, 1.0);
}

// Missing the boundary of IU 3 (index 2) breaks IU 2's right edge and IU 3's
// left edge: 3 of 5 IUs stay well-identified.
TEST(PrototypeEval, MissedBoundaryExcludesIuAndNeighbor) {
  auto pairs = FiveIus();
  pairs[4].pred.boundary = Boundary::kInside;
  const auto r = PrototypeEval(pairs);
  EXPECT_EQ(r.well_identified, 3u);
  EXPECT_DOUBLE_EQ(r.coverage, 0.6);
}

TEST(PrototypeEval, SpuriousBoundaryExcludesOnlyThatIu) {
  auto pairs = FiveIus();
  pairs[3].pred.boundary = Boundary::kBegin;
  EXPECT_EQ(PrototypeEval(pairs).well_identified, 4u);
}

TEST(PrototypeEval, RuleChoosesWord) {
  auto pairs = FiveIus();
  pairs[1].pred.prototype = Prototype::kRequestForResponse;  // last word of IU 0
  EXPECT_LT(PrototypeEval(pairs, PrototypeRule::kLastWord).accuracy, 1.0);
  EXPECT_DOUBLE_EQ(PrototypeEval(pairs, PrototypeRule::kFirstWord).accuracy, 1.0);
  EXPECT_DOUBLE_EQ(PrototypeEval(pairs).first_last_agreement, 0.8);
}

TEST(PrototypeEval, NoWellIdentifiedIuThrows) {
  auto pairs = FiveIus();
  for (auto& p : pairs) p.pred.boundary = Boundary::kInside;
  EXPECT_THROW(PrototypeEval(pairs), InputError);
}

TEST(Evaluate, OnlyPresentFieldsAreScored) {
  std::vector<LabeledPair> pairs = FiveIus();
  for (auto& p : pairs) {
    p.gold.emphasis.reset();
    p.pred.emphasis.reset();
  }
  const auto r = Evaluate(pairs);
  EXPECT_TRUE(r.segmentation.has_value());
  EXPECT_TRUE(r.prototype.has_value());
  EXPECT_FALSE(r.emphasis.has_value());
  EXPECT_EQ(r.words, 10u);
}

// Single-task predictions are scored against the full gold annotation.
TEST(Evaluate, PrototypeOnlyPredictionsUseGoldSpans) {
  std::vector<LabeledPair> pairs = FiveIus();
  for (auto& p : pairs) p.pred = p.pred.Project(Task::kPrototype);
  const auto r = Evaluate(pairs);
  EXPECT_FALSE(r.segmentation.has_value());
  EXPECT_FALSE(r.emphasis.has_value());
  ASSERT_TRUE(r.prototype.has_value());
  EXPECT_EQ(r.prototype->coverage, 1.0);
}

}  // namespace
}  // namespace prosody
