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

#ifndef PROSODY_LABELS_H_
#define PROSODY_LABELS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace prosody {

// IU-initial (B) or IU-internal (I).
enum class Boundary : std::uint8_t { kBegin = 0, kInside = 1 };

// Para-syntactic modality of an intonation unit: "," "." "?".
enum class Prototype : std::uint8_t {
  kContinuation = 0,
  kConclusion = 1,
  kRequestForResponse = 2,
};

// Binary emphasis used by the model task.
enum class Emphasis : std::uint8_t { kEmphasized = 0, kNone = 1 };

// Annotation-level emphasis. De-emphasis is folded into kNone.
enum class EmphasisLevel : std::uint8_t { kPrimary = 0, kSecondary = 1, kNone = 2 };

inline constexpr int kNumBoundaries = 2;
inline constexpr int kNumPrototypes = 3;
inline constexpr int kNumEmphases = 2;
inline constexpr int kNumCombinations = kNumBoundaries * kNumPrototypes * kNumEmphases;

inline constexpr std::array<Prototype, kNumPrototypes> kAllPrototypes = {
    Prototype::kContinuation, Prototype::kConclusion, Prototype::kRequestForResponse};

constexpr Emphasis ToBinary(EmphasisLevel level) {
  return level == EmphasisLevel::kNone ? Emphasis::kNone : Emphasis::kEmphasized;
}

// The per-word (boundary, prototype, emphasis) triple.
//
// Combinations are enumerated in a fixed order:
//   index = boundary * 6 + prototype * 2 + emphasis
// so index 0 is (B, continuation, emphasized) and index 11 is
// (I, request_for_response, none). Every token ordering in the codec follows
// this enumeration.
struct LabelCombination {
  Boundary boundary = Boundary::kBegin;
  Prototype prototype = Prototype::kContinuation;
  Emphasis emphasis = Emphasis::kNone;

  constexpr int Index() const {
    return static_cast<int>(boundary) * (kNumPrototypes * kNumEmphases) +
           static_cast<int>(prototype) * kNumEmphases + static_cast<int>(emphasis);
  }

  static constexpr LabelCombination FromIndex(int index) {
    return LabelCombination{
        static_cast<Boundary>(index / (kNumPrototypes * kNumEmphases)),
        static_cast<Prototype>((index / kNumEmphases) % kNumPrototypes),
        static_cast<Emphasis>(index % kNumEmphases)};
  }

  friend constexpr bool operator==(const LabelCombination&, const LabelCombination&) = default;
};

// All twelve combinations in index order.
constexpr std::array<LabelCombination, kNumCombinations> AllCombinations() {
  std::array<LabelCombination, kNumCombinations> out{};
  for (int i = 0; i < kNumCombinations; ++i) out[i] = LabelCombination::FromIndex(i);
  return out;
}

// Stable lowercase names used in every file format: "B"/"I",
// "continuation"/"conclusion"/"request_for_response", "emphasized"/"none",
// "primary"/"secondary"/"none".
std::string_view ToString(Boundary b);
std::string_view ToString(Prototype p);
std::string_view ToString(Emphasis e);
std::string_view ToString(EmphasisLevel e);
std::string ToString(const LabelCombination& c);

std::optional<Boundary> ParseBoundary(std::string_view s);
std::optional<Prototype> ParsePrototype(std::string_view s);
std::optional<Emphasis> ParseEmphasis(std::string_view s);
std::optional<EmphasisLevel> ParseEmphasisLevel(std::string_view s);

}  // namespace prosody

#endif  // PROSODY_LABELS_H_
