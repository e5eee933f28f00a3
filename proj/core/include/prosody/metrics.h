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

#ifndef PROSODY_METRICS_H_
#define PROSODY_METRICS_H_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prosody/codec.h"

namespace prosody {

// One scored word.
struct LabeledPair {
  ProsodicLabel gold;
  ProsodicLabel pred;
  std::size_t turn = 0;
  std::size_t word = 0;  // index within the turn
  bool turn_initial = false;
  std::string speaker_id;
};

// (p_o - p_e) / (1 - p_e) with p_e from the marginal products. Returns 1
// when p_e = 1 (both raters used one and the same category). Throws
// InputError on a length mismatch or empty input.
double CohensKappa(std::span<const int> gold, std::span<const int> pred);

struct Scores {
  double kappa = 0.0;
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  std::size_t n = 0;
};

// Binary scores of `positive` against the rest. Kappa is computed on the
// binarized labels. Precision, recall and F1 are 0 when undefined.
Scores BinaryScores(std::span<const int> gold, std::span<const int> pred, int positive);

// Boundary task, positive class B. With include_first = false each turn's
// first word is dropped ("without start"). Throws InputError when a pair
// lacks a boundary or nothing is left to score.
Scores SegmentationMetrics(std::span<const LabeledPair> pairs, bool include_first);

// Emphasis task, positive class "emphasized".
Scores EmphasisMetrics(std::span<const LabeledPair> pairs);

// How an IU's predicted prototype is read off its first and last words.
enum class PrototypeRule { kLastWord, kFirstWord };

struct PrototypeScores {
  double kappa = 0.0;     // multi-class, over well-identified IUs
  double accuracy = 0.0;  // micro
  std::array<Scores, kNumPrototypes> per_class{};  // one-vs-rest
  std::size_t total_ius = 0;
  std::size_t well_identified = 0;
  double coverage = 0.0;
  // Fraction of well-identified IUs whose first- and last-word predictions
  // agree.
  double first_last_agreement = 0.0;
};

// Per-IU prototype evaluation. Gold IUs come from gold boundaries. An IU is
// well-identified when the predicted boundaries reproduce its span exactly:
// B on its first word, I on every other word, and B on the next IU's first
// word (or the turn ends). When predictions carry no boundaries every IU
// counts as well-identified. Throws InputError when no IU is
// well-identified.
PrototypeScores PrototypeEval(std::span<const LabeledPair> pairs,
                              PrototypeRule rule = PrototypeRule::kLastWord);

struct MetricsReport {
  std::optional<Scores> segmentation;
  std::optional<Scores> segmentation_wos;
  std::optional<Scores> emphasis;
  std::optional<PrototypeScores> prototype;
  std::size_t turns = 0;
  std::size_t speakers = 0;
  std::size_t words = 0;
};

// Every metric whose fields are present in the predictions.
MetricsReport Evaluate(std::span<const LabeledPair> pairs,
                       PrototypeRule rule = PrototypeRule::kLastWord);

}  // namespace prosody

#endif  // PROSODY_METRICS_H_
