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

#ifndef PROSODY_TURNS_H_
#define PROSODY_TURNS_H_

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "prosody/corpus.h"

namespace prosody {

struct TurnParams {
  double max_pause_s = 1.0;
  std::size_t min_ius = 2;
  double max_dur_s = 30.0;
  std::size_t max_tokens = 448;
  bool allow_multi_speaker = true;
  // Count min_ius per speaker rather than per turn.
  bool strict_same_speaker = false;

  // Throws InputError when a numeric field is not positive.
  void Validate() const;
};

// Encoded length of a candidate turn, in tokens.
using TokenCounter = std::function<std::size_t(std::span<const Word>)>;

struct CompileResult {
  std::vector<Turn> turns;
  std::vector<std::string> warnings;
};

// Greedy left-to-right packing of consecutive IUs: the current turn is
// extended while pause, speaker, duration and token constraints all hold,
// and closed otherwise. IUs are never split. A lone IU that breaks the
// duration or token bound is emitted flagged `oversize`; turns with fewer
// than min_ius IUs are emitted flagged `below_min_ius`.
CompileResult CompileTurns(const Corpus& corpus, const TurnParams& params,
                           const TokenCounter& token_counter);

// Per-check results for one turn, in manifest order.
struct TurnChecks {
  bool duration = true;
  bool tokens = true;
  bool pause = true;
  bool min_ius = true;
  bool single_speaker = true;
};
TurnChecks CheckTurn(const Turn& turn, const TurnParams& params);

struct TurnStatsReport {
  std::size_t turns = 0;
  std::size_t flagged = 0;
  std::map<std::size_t, std::size_t> speaker_counts;  // #speakers -> #turns
  std::map<std::size_t, std::size_t> iu_counts;       // #IUs -> #turns
  std::map<int, std::size_t> duration_bins;           // 5 s bins, key = lower edge
  double mean_duration_s = 0.0;

  double SpeakerFraction(std::size_t speakers) const;
  std::string Render() const;
};

// Throws InputError on an empty turn list.
TurnStatsReport TurnStats(std::span<const Turn> turns);

}  // namespace prosody

#endif  // PROSODY_TURNS_H_
