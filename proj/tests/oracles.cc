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

#include "oracles.h"

#include <cmath>
#include <map>
#include <utility>

#include "prosody/synth.h"

namespace prosody::oracle {

Contingency Tabulate(const std::vector<int>& gold, const std::vector<int>& pred, int categories) {
  Contingency t;
  t.counts.assign(categories, std::vector<double>(categories, 0.0));
  for (std::size_t i = 0; i < gold.size(); ++i) {
    t.counts[gold[i]][pred[i]] += 1;
    t.n += 1;
  }
  return t;
}

double Kappa(const Contingency& t) {
  const std::size_t k = t.counts.size();
  double diag = 0;
  std::vector<double> rows(k, 0), cols(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      rows[i] += t.counts[i][j];
      cols[j] += t.counts[i][j];
      if (i == j) diag += t.counts[i][j];
    }
  }
  const double po = diag / t.n;
  double pe = 0;
  for (std::size_t i = 0; i < k; ++i) pe += (rows[i] / t.n) * (cols[i] / t.n);
  if (pe == 1.0) return 1.0;
  return (po - pe) / (1 - pe);
}

BinaryCounts CountBinary(const std::vector<int>& gold, const std::vector<int>& pred, int positive) {
  BinaryCounts c;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool g = gold[i] == positive, p = pred[i] == positive;
    if (g && p) c.tp += 1;
    else if (!g && p) c.fp += 1;
    else if (g && !p) c.fn += 1;
    else c.tn += 1;
  }
  return c;
}

std::vector<ProsodicLabel> InverseDecode(const AudioFeatures& f, const Turn& turn) {
  std::vector<ProsodicLabel> out;
  for (const Word& w : turn.Words()) {
    double onset = 0, ramp = 0, reg = 0;
    int n = 0;
    for (std::size_t frame = 0; frame < f.frames; ++frame) {
      const double center = (frame + 0.5) / f.frame_rate;
      if (center < w.start_s || center >= w.end_s) continue;
      onset += f.at(frame, kIuOnset);
      ramp += f.at(frame, kEmphasisRamp);
      reg += f.at(frame, kRegister);
      ++n;
    }
    ProsodicLabel l;
    if (n == 0) {
      out.push_back(l);
      continue;
    }
    onset /= n;
    ramp /= n;
    reg /= n;
    l.boundary = onset > 0.5 ? Boundary::kBegin : Boundary::kInside;
    l.emphasis = ramp > 0.3 ? Emphasis::kEmphasized : Emphasis::kNone;
    l.prototype = reg < -0.5  ? Prototype::kConclusion
                  : reg > 0.5 ? Prototype::kRequestForResponse
                              : Prototype::kContinuation;
    out.push_back(l);
  }
  return out;
}

Corpus RandomCorpus(std::mt19937_64& rng) {
  auto uni = [&rng](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto integer = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  Corpus c;
  const int sources = integer(1, 3);
  const int speakers = integer(1, 3);
  for (int s = 0; s < sources; ++s) {
    Source src;
    src.name = "r" + std::to_string(s);
    src.audio = src.name + ".wav";
    double t = uni(0.0, 1.0);
    const int ius = integer(1, 40);
    for (int u = 0; u < ius; ++u) {
      if (u > 0) t += uni(0.0, 3.0);
      const double dur = integer(0, 19) == 0 ? uni(30.5, 35.0) : uni(0.2, 12.0);
      const int words = integer(1, 60);
      IntonationUnit iu;
      iu.prototype = static_cast<Prototype>(integer(0, 2));
      iu.speaker_id = "p" + std::to_string(integer(0, speakers - 1));
      for (int k = 0; k < words; ++k) {
        Word w;
        w.text = std::string(1 + k % 5, static_cast<char>('a' + k % 26));
        w.start_s = t + dur * k / words;
        w.end_s = t + dur * (k + 1) / words;
        w.speaker_id = iu.speaker_id;
        w.labels.boundary = k == 0 ? Boundary::kBegin : Boundary::kInside;
        w.labels.prototype = iu.prototype;
        w.labels.emphasis = EmphasisLevel::kNone;
        iu.words.push_back(std::move(w));
      }
      t += dur;
      c.speakers.insert(iu.speaker_id);
      src.ius.push_back(std::move(iu));
    }
    c.sources.push_back(std::move(src));
  }
  return c;
}

TurnParams RandomParams(std::mt19937_64& rng) {
  TurnParams p;
  p.max_pause_s = std::uniform_real_distribution<double>(0.2, 2.5)(rng);
  p.min_ius = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
  p.allow_multi_speaker = std::bernoulli_distribution(0.5)(rng);
  p.strict_same_speaker = std::bernoulli_distribution(0.2)(rng);
  return p;
}

std::size_t ToyTokenCount(std::span<const Word> words) {
  std::size_t n = 2;
  for (const Word& w : words) n += 1 + w.text.size() % 3;
  return n;
}

namespace {

std::string Where(const Turn& t) { return t.source + " iu " + std::to_string(t.first_iu); }

std::size_t SpeakerCount(const Turn& t) {
  std::map<std::string, int> seen;
  for (const auto& iu : t.ius) {
    for (const auto& w : iu.words) seen[w.speaker_id] = 1;
  }
  return seen.size();
}

bool MinIusHold(const Turn& t, const TurnParams& p) {
  if (!p.strict_same_speaker) return t.ius.size() >= p.min_ius;
  std::map<std::string, std::size_t> per;
  for (const auto& iu : t.ius) ++per[iu.speaker_id];
  for (const auto& [s, n] : per) {
    if (n >= p.min_ius) return true;
  }
  return false;
}

}  // namespace

std::string TurnSoundness(const Corpus& corpus, const TurnParams& params,
                          const std::vector<Turn>& turns) {
  constexpr double eps = 1e-9;
  std::map<std::string, std::size_t> next_iu;
  for (const Turn& t : turns) {
    if (t.ius.empty()) return "empty turn";
    const Source* src = nullptr;
    for (const auto& s : corpus.sources) {
      if (s.name == t.source) src = &s;
    }
    if (src == nullptr) return "unknown source " + t.source;
    if (t.first_iu != next_iu[t.source]) return Where(t) + ": IU coverage gap or overlap";
    for (std::size_t k = 0; k < t.ius.size(); ++k) {
      const auto& a = t.ius[k];
      const auto& b = src->ius.at(t.first_iu + k);
      if (a.words.size() != b.words.size() || a.start_s() != b.start_s()) {
        return Where(t) + ": turn IU differs from source IU";
      }
    }
    next_iu[t.source] = t.first_iu + t.ius.size();

    std::vector<Word> words;
    for (const auto& iu : t.ius) words.insert(words.end(), iu.words.begin(), iu.words.end());
    const double duration = words.back().end_s - words.front().start_s;
    const std::size_t tokens = ToyTokenCount(words);
    double pause = 0;
    for (std::size_t k = 1; k < t.ius.size(); ++k) {
      pause = std::max(pause, t.ius[k].words.front().start_s - t.ius[k - 1].words.back().end_s);
    }
    const bool size_ok = duration <= params.max_dur_s + eps && tokens <= params.max_tokens;
    const bool min_ok = MinIusHold(t, params);

    if (tokens != t.token_count) return Where(t) + ": token count disagrees";
    if (t.oversize != !size_ok) return Where(t) + ": oversize flag wrong";
    if (t.oversize && t.ius.size() != 1) return Where(t) + ": oversize turn spans several IUs";
    if (t.below_min_ius != !min_ok) return Where(t) + ": below_min_ius flag wrong";
    if (pause > params.max_pause_s + 1e-4) return Where(t) + ": pause bound broken";
    if (!params.allow_multi_speaker && SpeakerCount(t) > 1) return Where(t) + ": mixed speakers";
    if (!t.oversize && !t.below_min_ius) {
      if (!size_ok || t.ius.size() < 1 || !min_ok) return Where(t) + ": unflagged turn breaks a bound";
    }
  }
  for (const auto& s : corpus.sources) {
    if (next_iu[s.name] != s.ius.size()) return s.name + ": IUs left uncovered";
  }
  return "";
}

std::vector<double> LogRampCurve(double lo, double hi, std::size_t points, double median) {
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double tau = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    out[i] = std::log(lo + (hi - lo) * tau) - median;
  }
  return out;
}

PitchScene RandomPitchScene(std::mt19937_64& rng) {
  auto uni = [&rng](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  PitchScene scene;
  const int words = std::uniform_int_distribution<int>(3, 8)(rng);
  double t = uni(0.2, 1.0);
  scene.iu.prototype = Prototype::kContinuation;
  scene.iu.speaker_id = "s";
  for (int k = 0; k < words; ++k) {
    Word w;
    w.text = "w";
    w.start_s = t;
    t += uni(0.15, 0.6);
    w.end_s = t;
    w.speaker_id = "s";
    scene.iu.words.push_back(w);
  }
  const double end = t + 0.5;
  const double base = uni(80, 250), a1 = uni(-0.3, 0.3), a2 = uni(-0.2, 0.2);
  const double f1 = uni(0.3, 2.0), f2 = uni(1.0, 4.0);
  const double short_gap = uni(0.2, 1.5), long_gap = uni(0.5, 2.5), long_len = uni(0.6, 0.8);
  for (int k = 0; k / 100.0 < end; ++k) {
    const double time = k / 100.0;
    const bool unvoiced = (time >= short_gap && time < short_gap + 0.06) ||
                          (time >= long_gap && time < long_gap + long_len);
    const double f0 = base * std::exp(a1 * std::sin(f1 * time) + a2 * std::cos(f2 * time));
    scene.samples.emplace_back(time, unvoiced ? 0.0 : f0);
  }
  return scene;
}

}  // namespace prosody::oracle
