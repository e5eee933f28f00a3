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

#include "prosody/pitch.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "prosody/error.h"

namespace prosody {

PitchTrack ReadPitchTrack(std::istream& in) {
  PitchTrack track;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    PitchSample s;
    if (!(fields >> s.time_s >> s.f0_hz) || s.f0_hz < 0 || !std::isfinite(s.f0_hz)) {
      throw InputError("pitch_analysis", "bad pitch line " + std::to_string(line_no));
    }
    if (!track.samples.empty() && s.time_s <= track.samples.back().time_s) {
      throw InputError("pitch_analysis",
                       "pitch times not strictly increasing at line " + std::to_string(line_no));
    }
    track.samples.push_back(s);
  }
  return track;
}

void WritePitchTrack(std::ostream& out, const PitchTrack& track) {
  char buf[64];
  for (const auto& s : track.samples) {
    std::snprintf(buf, sizeof(buf), "%.4f\t%.3f\n", s.time_s, s.f0_hz);
    out << buf;
  }
}

double SpeakerMedianLogPitch(std::span<const PitchTrack> tracks) {
  std::vector<double> logs;
  for (const auto& t : tracks) {
    for (const auto& s : t.samples) {
      if (s.voiced()) logs.push_back(std::log(s.f0_hz));
    }
  }
  if (logs.empty()) throw InputError("pitch_analysis", "speaker has no voiced samples");
  std::sort(logs.begin(), logs.end());
  std::size_t n = logs.size();
  return n % 2 ? logs[n / 2] : 0.5 * (logs[n / 2 - 1] + logs[n / 2]);
}

NormalizedCurve IuCurve(const IntonationUnit& iu, const PitchTrack& track, double median,
                        const CurveOptions& options) {
  NormalizedCurve curve;
  curve.values.assign(options.points, 0.0);
  const double start = iu.start_s();
  const double end = iu.end_s();

  std::vector<double> times;
  std::vector<double> values;
  std::size_t total = 0;
  for (const auto& s : track.samples) {
    if (s.time_s < start - kTimeEpsilon || s.time_s > end + kTimeEpsilon) continue;
    ++total;
    if (!s.voiced()) continue;
    times.push_back(s.time_s);
    values.push_back(std::log(s.f0_hz) - median);
  }
  curve.voiced_coverage =
      total == 0 ? 0.0 : static_cast<double>(times.size()) / static_cast<double>(total);
  if (times.empty() || curve.voiced_coverage < options.min_coverage) {
    curve.excluded = true;
    return curve;
  }

  const double span = end - start;
  for (std::size_t k = 0; k < options.points; ++k) {
    double t = options.points == 1
                   ? start
                   : start + span * static_cast<double>(k) / static_cast<double>(options.points - 1);
    auto hi = std::lower_bound(times.begin(), times.end(), t);
    if (hi == times.begin()) {
      curve.values[k] = values.front();
      continue;
    }
    if (hi == times.end()) {
      curve.values[k] = values.back();
      continue;
    }
    std::size_t b = static_cast<std::size_t>(hi - times.begin());
    std::size_t a = b - 1;
    if (times[b] == t) {
      curve.values[k] = values[b];
    } else if (times[b] - times[a] <= options.max_gap_s) {
      double w = (t - times[a]) / (times[b] - times[a]);
      curve.values[k] = values[a] + w * (values[b] - values[a]);
    } else {
      curve.values[k] = (t - times[a] <= times[b] - t) ? values[a] : values[b];
    }
  }
  return curve;
}

std::string_view ToString(EmphasisHalf h) {
  switch (h) {
    case EmphasisHalf::kFirstHalf:
      return "first_half";
    case EmphasisHalf::kSecondHalf:
      return "second_half";
    case EmphasisHalf::kNone:
      return "none";
  }
  return "?";
}

EmphasisHalf EmphasisHalfOf(const IntonationUnit& iu) {
  const double mid = 0.5 * (iu.start_s() + iu.end_s());
  for (const auto& w : iu.words) {
    if (w.labels.emphasis && ToBinary(*w.labels.emphasis) == Emphasis::kEmphasized) {
      double word_mid = 0.5 * (w.start_s + w.end_s);
      return word_mid < mid ? EmphasisHalf::kFirstHalf : EmphasisHalf::kSecondHalf;
    }
  }
  return EmphasisHalf::kNone;
}

AggregateResult AggregateCurves(
    const std::map<std::string, std::vector<NormalizedCurve>>& grouped) {
  AggregateResult result;
  for (const auto& [key, curves] : grouped) {
    CurveGroup group;
    for (const auto& c : curves) {
      if (c.excluded) continue;
      if (group.mean.empty()) group.mean.assign(c.values.size(), 0.0);
      if (c.values.size() != group.mean.size()) {
        throw InputError("pitch_analysis", "curves of group " + key + " differ in length");
      }
      for (std::size_t i = 0; i < c.values.size(); ++i) group.mean[i] += c.values[i];
      ++group.count;
    }
    if (group.count == 0) {
      result.warnings.push_back("group " + key + " has no usable curves; omitted");
      continue;
    }
    for (double& v : group.mean) v /= static_cast<double>(group.count);
    result.groups.emplace(key, std::move(group));
  }
  return result;
}

void WriteCurveCsv(std::ostream& out, const AggregateResult& result) {
  std::size_t points = 0;
  for (const auto& [key, g] : result.groups) points = std::max(points, g.mean.size());
  out << "group,count";
  for (std::size_t i = 0; i < points; ++i) out << ",p" << i;
  out << "\n";
  char buf[32];
  for (const auto& [key, g] : result.groups) {
    out << key << "," << g.count;
    for (double v : g.mean) {
      std::snprintf(buf, sizeof(buf), ",%.6f", v);
      out << buf;
    }
    out << "\n";
  }
}

std::map<std::string, double> SpeakerMedians(const Corpus& corpus,
                                             const std::map<std::string, PitchTrack>& tracks) {
  std::map<std::string, std::vector<double>> logs;
  for (const Source& src : corpus.sources) {
    auto it = tracks.find(src.name);
    if (it == tracks.end()) continue;
    const auto& samples = it->second.samples;
    for (const auto& iu : src.ius) {
      for (const auto& w : iu.words) {
        auto lo = std::lower_bound(samples.begin(), samples.end(), w.start_s - kTimeEpsilon,
                                   [](const PitchSample& s, double t) { return s.time_s < t; });
        for (; lo != samples.end() && lo->time_s <= w.end_s + kTimeEpsilon; ++lo) {
          if (lo->voiced()) logs[w.speaker_id].push_back(std::log(lo->f0_hz));
        }
      }
    }
  }
  std::map<std::string, double> out;
  for (auto& [speaker, v] : logs) {
    PitchTrack t;
    t.samples.reserve(v.size());
    for (double l : v) t.samples.push_back(PitchSample{0.0, std::exp(l)});
    out[speaker] = SpeakerMedianLogPitch(std::span<const PitchTrack>(&t, 1));
  }
  return out;
}

AggregateResult PitchCurves(const Corpus& corpus, const std::map<std::string, PitchTrack>& tracks,
                            CurveGrouping grouping, const CurveOptions& options) {
  const auto medians = SpeakerMedians(corpus, tracks);
  std::map<std::string, std::vector<NormalizedCurve>> grouped;
  for (const Source& src : corpus.sources) {
    auto it = tracks.find(src.name);
    if (it == tracks.end()) continue;
    for (const auto& iu : src.ius) {
      auto median = medians.find(iu.speaker_id);
      if (median == medians.end()) continue;
      std::string proto = iu.prototype ? std::string(ToString(*iu.prototype)) : "unlabeled";
      std::string half(ToString(EmphasisHalfOf(iu)));
      std::string key = grouping == CurveGrouping::kPrototype      ? proto
                        : grouping == CurveGrouping::kEmphasisHalf ? half
                                                                   : proto + "/" + half;
      grouped[key].push_back(IuCurve(iu, it->second, median->second, options));
    }
  }
  return AggregateCurves(grouped);
}

PitchTrack EstimatePitch(std::span<const float> samples, double sample_rate, double hop_s,
                         double min_f0, double max_f0, double voicing_threshold) {
  PitchTrack track;
  const auto window = static_cast<std::size_t>(0.04 * sample_rate);
  const auto hop = std::max<std::size_t>(1, static_cast<std::size_t>(hop_s * sample_rate));
  const auto min_lag = static_cast<std::size_t>(sample_rate / max_f0);
  const auto max_lag = std::min(window - 1, static_cast<std::size_t>(sample_rate / min_f0));
  if (window == 0 || min_lag == 0 || min_lag >= max_lag) {
    throw InputError("pitch_analysis", "sample rate too low for the f0 search range");
  }
  for (std::size_t begin = 0; begin + window <= samples.size(); begin += hop) {
    auto frame = samples.subspan(begin, window);
    double energy = 0.0;
    for (float v : frame) energy += static_cast<double>(v) * v;
    PitchSample s{(static_cast<double>(begin) + 0.5 * static_cast<double>(window)) / sample_rate,
                  0.0};
    if (energy > 1e-10) {
      double best = 0.0;
      std::size_t best_lag = 0;
      for (std::size_t lag = min_lag; lag <= max_lag; ++lag) {
        double acc = 0.0;
        double e1 = 0.0;
        double e2 = 0.0;
        for (std::size_t i = 0; i + lag < window; ++i) {
          acc += static_cast<double>(frame[i]) * frame[i + lag];
          e1 += static_cast<double>(frame[i]) * frame[i];
          e2 += static_cast<double>(frame[i + lag]) * frame[i + lag];
        }
        double r = acc / std::sqrt(e1 * e2 + 1e-20);
        if (r > best) {
          best = r;
          best_lag = lag;
        }
      }
      if (best >= voicing_threshold && best_lag > 0) {
        s.f0_hz = sample_rate / static_cast<double>(best_lag);
      }
    }
    track.samples.push_back(s);
  }
  return track;
}

}  // namespace prosody
