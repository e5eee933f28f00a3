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

#include "prosody/turns.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "prosody/error.h"

namespace prosody {

void TurnParams::Validate() const {
  if (!(max_pause_s > 0) || min_ius == 0 || !(max_dur_s > 0) || max_tokens == 0) {
    throw InputError("turn_compiler", "turn parameters must be positive");
  }
}

namespace {

bool MeetsMinIus(const Turn& turn, const TurnParams& params) {
  if (!params.strict_same_speaker) return turn.ius.size() >= params.min_ius;
  std::map<std::string, std::size_t> per_speaker;
  for (const auto& iu : turn.ius) ++per_speaker[iu.speaker_id];
  return std::any_of(per_speaker.begin(), per_speaker.end(),
                     [&](const auto& kv) { return kv.second >= params.min_ius; });
}

}  // namespace

TurnChecks CheckTurn(const Turn& turn, const TurnParams& params) {
  TurnChecks c;
  c.duration = turn.Duration() <= params.max_dur_s + kTimeEpsilon;
  c.tokens = turn.token_count <= params.max_tokens;
  c.pause = turn.MaxInternalPause() <= params.max_pause_s + kTimeEpsilon;
  c.min_ius = MeetsMinIus(turn, params);
  c.single_speaker = turn.Speakers().size() <= 1;
  return c;
}

CompileResult CompileTurns(const Corpus& corpus, const TurnParams& params,
                           const TokenCounter& token_counter) {
  params.Validate();
  CompileResult result;
  for (const Source& src : corpus.sources) {
    std::size_t u = 0;
    while (u < src.ius.size()) {
      Turn turn;
      turn.source = src.name;
      turn.first_iu = u;
      turn.ius.push_back(src.ius[u]);
      std::vector<Word> words = src.ius[u].words;
      turn.token_count = token_counter(words);
      ++u;
      while (u < src.ius.size()) {
        const IntonationUnit& next = src.ius[u];
        // Pause first, then composition, then size.
        if (next.start_s() - turn.end_s() > params.max_pause_s + kTimeEpsilon) break;
        if (!params.allow_multi_speaker && next.speaker_id != turn.ius.front().speaker_id) break;
        if (next.end_s() - turn.start_s() > params.max_dur_s + kTimeEpsilon) break;
        std::vector<Word> candidate = words;
        candidate.insert(candidate.end(), next.words.begin(), next.words.end());
        std::size_t tokens = token_counter(candidate);
        if (tokens > params.max_tokens) break;
        words = std::move(candidate);
        turn.token_count = tokens;
        turn.ius.push_back(next);
        ++u;
      }
      TurnChecks checks = CheckTurn(turn, params);
      if (!checks.duration || !checks.tokens) {
        turn.oversize = true;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s iu %zu: single IU exceeds limits (%.2f s, %zu tokens)",
                      src.name.c_str(), turn.first_iu, turn.Duration(), turn.token_count);
        result.warnings.emplace_back(buf);
      }
      turn.below_min_ius = !checks.min_ius;
      result.turns.push_back(std::move(turn));
    }
  }
  return result;
}

double TurnStatsReport::SpeakerFraction(std::size_t speakers) const {
  auto it = speaker_counts.find(speakers);
  if (it == speaker_counts.end() || turns == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(turns);
}

std::string TurnStatsReport::Render() const {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "turns: %zu (flagged %zu), mean duration %.2f s\n", turns,
                flagged, mean_duration_s);
  out << buf;
  out << "speakers per turn\n";
  for (const auto& [k, n] : speaker_counts) {
    std::snprintf(buf, sizeof(buf), "  %zu speaker%s: %zu (%.1f%%)\n", k, k == 1 ? "" : "s", n,
                  100.0 * static_cast<double>(n) / static_cast<double>(turns));
    out << buf;
  }
  out << "duration (s)\n";
  for (const auto& [lo, n] : duration_bins) {
    std::snprintf(buf, sizeof(buf), "  [%d, %d): %zu\n", lo, lo + 5, n);
    out << buf;
  }
  out << "IUs per turn\n";
  for (const auto& [k, n] : iu_counts) {
    std::snprintf(buf, sizeof(buf), "  %zu: %zu\n", k, n);
    out << buf;
  }
  return out.str();
}

TurnStatsReport TurnStats(std::span<const Turn> turns) {
  if (turns.empty()) throw InputError("turn_compiler", "no turns to summarize");
  TurnStatsReport report;
  double total = 0.0;
  for (const Turn& t : turns) {
    ++report.turns;
    if (t.oversize || t.below_min_ius) ++report.flagged;
    ++report.speaker_counts[t.Speakers().size()];
    ++report.iu_counts[t.ius.size()];
    int bin = static_cast<int>(std::floor(t.Duration() / 5.0)) * 5;
    ++report.duration_bins[bin];
    total += t.Duration();
  }
  report.mean_duration_s = total / static_cast<double>(report.turns);
  return report;
}

}  // namespace prosody
