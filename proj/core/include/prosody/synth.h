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

#ifndef PROSODY_SYNTH_H_
#define PROSODY_SYNTH_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "prosody/corpus.h"
#include "prosody/features.h"
#include "prosody/pitch.h"

namespace prosody {

// Feature channels of synthetic turns. Labels are recoverable from the
// per-word means of channels 3-5 by construction.
enum SynthChannel : std::size_t {
  kVoicing = 0,      // 1 inside words
  kLogPitch = 1,     // contour template + emphasis bump, relative to speaker base
  kWordOnset = 2,    // 1 on the first frame of every word
  kIuOnset = 3,      // 1 across IU-initial words
  kEmphasisRamp = 4, // rises 0.3 -> 1 across emphasized words
  kRegister = 5,     // per-IU prototype code: continuation 0, conclusion -1, request +1
  kIndexBase = 6,    // sin/cos of the word index at kIndexPeriods
};
inline constexpr std::array<double, 4> kIndexPeriods = {7.0, 13.0, 29.0, 61.0};
inline constexpr std::size_t kSynthChannels = kIndexBase + 2 * kIndexPeriods.size();

// Median-relative log-pitch template of a prototype at normalized IU time
// tau in [0, 1]: flat up to tau 0.6, then a linear terminal movement to
// +0.15 (continuation), -0.35 (conclusion) or +0.45 (request for response).
double ContourTemplate(Prototype p, double tau);
// Added over an emphasized word, u in [0, 1] across the word.
double EmphasisBump(double u);
double RegisterCode(Prototype p);

struct SynthSpec {
  std::size_t n_turns = 100;
  std::uint64_t seed = 7;
  std::array<double, 3> prototype_mix = {0.55, 0.40, 0.05};
  std::array<double, 2> emphasis_mix = {0.35, 0.65};  // emphasized, none
  double secondary_share = 0.33;  // of emphasized words
  std::size_t min_ius = 2;
  std::size_t max_ius = 5;
  std::size_t min_words = 1;  // per IU
  std::size_t max_words = 6;
  double min_word_s = 0.2;
  double max_word_s = 0.5;
  double max_word_gap_s = 0.04;  // inside an IU
  double min_pause_s = 0.15;     // between IUs
  double max_pause_s = 0.6;
  std::size_t n_speakers = 4;
  double speaker_change_prob = 0.1;  // per IU boundary
  bool alternate_speakers = false;   // change speaker at every IU
  std::size_t vocabulary_words = 40;
  double frame_rate = 25.0;
  double pitch_rate = 100.0;
  double feature_noise = 0.1;
  double pitch_noise = 0.01;  // log-Hz

  // Throws InputError unless both mixtures sum to 1 and ranges are ordered.
  void Validate() const;
};

struct SynthData {
  Corpus corpus;                        // one source per turn
  std::vector<Turn> turns;              // turn i covers source i entirely
  std::vector<AudioFeatures> features;  // per turn
  std::vector<PitchTrack> pitch;        // per turn
  std::vector<std::string> vocabulary;  // pseudo-words used
};

// Deterministic in the SynthSpec, seed included.
SynthData SynthCorpus(const SynthSpec& spec);

// Base log f0 of synthetic speaker k.
double SpeakerBaseLogF0(std::size_t speaker);

}  // namespace prosody

#endif  // PROSODY_SYNTH_H_
