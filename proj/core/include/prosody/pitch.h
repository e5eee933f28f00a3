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

#ifndef PROSODY_PITCH_H_
#define PROSODY_PITCH_H_

#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "prosody/corpus.h"

namespace prosody {

struct PitchSample {
  double time_s = 0.0;
  double f0_hz = 0.0;  // 0 = unvoiced

  bool voiced() const { return f0_hz > 0.0; }
};

struct PitchTrack {
  std::vector<PitchSample> samples;  // strictly increasing times
  std::string audio;
  std::string speaker_id;
};

// Two whitespace-separated columns per line: time_s f0_hz (0 = unvoiced).
// Lines starting with '#' are comments.
PitchTrack ReadPitchTrack(std::istream& in);
void WritePitchTrack(std::ostream& out, const PitchTrack& track);

// Median of log(f0) over every voiced sample of one speaker's tracks.
// Throws InputError when no sample is voiced.
double SpeakerMedianLogPitch(std::span<const PitchTrack> tracks);

struct CurveOptions {
  std::size_t points = 100;
  // Voiced anchors at most this far apart are joined linearly; longer gaps
  // take the nearest voiced value.
  double max_gap_s = 0.25;
  double min_coverage = 0.30;
};

struct NormalizedCurve {
  std::vector<double> values;  // median-relative log pitch, `points` long
  double voiced_coverage = 0.0;
  bool excluded = false;  // below min_coverage; values are zeros
};

// Log pitch of the track restricted to the IU span, minus `median`,
// resampled to `points` equally spaced instants from IU start to IU end.
NormalizedCurve IuCurve(const IntonationUnit& iu, const PitchTrack& track, double median,
                        const CurveOptions& options = {});

enum class EmphasisHalf { kFirstHalf, kSecondHalf, kNone };
std::string_view ToString(EmphasisHalf h);

// Where the first emphasized word of a labeled IU sits: its temporal
// midpoint against the IU's temporal midpoint.
EmphasisHalf EmphasisHalfOf(const IntonationUnit& iu);

struct CurveGroup {
  std::vector<double> mean;
  std::size_t count = 0;
};

struct AggregateResult {
  std::map<std::string, CurveGroup> groups;
  std::vector<std::string> warnings;
};

// Pointwise mean of the non-excluded curves of each group. Groups left
// without usable curves are omitted with a warning.
AggregateResult AggregateCurves(const std::map<std::string, std::vector<NormalizedCurve>>& grouped);

// CSV: "group,count,p0,...,p{N-1}".
void WriteCurveCsv(std::ostream& out, const AggregateResult& result);

// Median log f0 per speaker over voiced samples that fall inside that
// speaker's words. Tracks are keyed by source name.
std::map<std::string, double> SpeakerMedians(const Corpus& corpus,
                                             const std::map<std::string, PitchTrack>& tracks);

enum class CurveGrouping { kPrototype, kEmphasisHalf, kPrototypeAndEmphasisHalf };

// Normalized curves of every labeled IU with a pitch track, grouped by key
// ("continuation", "first_half", "continuation/first_half") and averaged.
AggregateResult PitchCurves(const Corpus& corpus, const std::map<std::string, PitchTrack>& tracks,
                            CurveGrouping grouping, const CurveOptions& options = {});

// Autocorrelation f0 estimate over 40 ms frames every `hop_s` seconds.
// Frames whose normalized autocorrelation peak is below `voicing_threshold`
// are unvoiced. Intended for clean, single-speaker input only: no octave-error
// correction or smoothing is done.
PitchTrack EstimatePitch(std::span<const float> samples, double sample_rate, double hop_s = 0.01,
                         double min_f0 = 60.0, double max_f0 = 500.0,
                         double voicing_threshold = 0.5);

}  // namespace prosody

#endif  // PROSODY_PITCH_H_
