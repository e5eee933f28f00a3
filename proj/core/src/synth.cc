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

#include "prosody/synth.h"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>

#include "prosody/error.h"

namespace prosody {

double ContourTemplate(Prototype p, double tau) {
  if (tau <= 0.6) return 0.0;
  double r = (std::min(tau, 1.0) - 0.6) / 0.4;
  switch (p) {
    case Prototype::kContinuation:
      return 0.15 * r;
    case Prototype::kConclusion:
      return -0.35 * r;
    case Prototype::kRequestForResponse:
      return 0.45 * r;
  }
  return 0.0;
}

double EmphasisBump(double u) { return 0.25 * std::sin(std::numbers::pi * std::clamp(u, 0.0, 1.0)); }

double RegisterCode(Prototype p) {
  switch (p) {
    case Prototype::kContinuation:
      return 0.0;
    case Prototype::kConclusion:
      return -1.0;
    case Prototype::kRequestForResponse:
      return 1.0;
  }
  return 0.0;
}

double SpeakerBaseLogF0(std::size_t speaker) {
  return std::log(100.0 + 35.0 * static_cast<double>(speaker % 8));
}

void SynthSpec::Validate() const {
  auto sums_to_one = [](auto& mix) {
    double s = 0.0;
    for (double w : mix) {
      if (w < 0) return false;
      s += w;
    }
    return std::abs(s - 1.0) < 1e-9;
  };
  if (!sums_to_one(prototype_mix)) {
    throw InputError("decode_harness", "prototype mixture must be non-negative and sum to 1");
  }
  if (!sums_to_one(emphasis_mix)) {
    throw InputError("decode_harness", "emphasis mixture must be non-negative and sum to 1");
  }
  if (min_ius == 0 || min_ius > max_ius || min_words == 0 || min_words > max_words ||
      !(min_word_s > 0) || min_word_s > max_word_s || min_pause_s > max_pause_s ||
      max_word_gap_s < 0 || n_speakers == 0 || vocabulary_words == 0 || !(frame_rate > 0) ||
      !(pitch_rate > 0)) {
    throw InputError("decode_harness", "inconsistent synthetic corpus ranges");
  }
}

namespace {

std::vector<std::string> PseudoWords(std::size_t n) {
  static constexpr const char* kOnsets[] = {"b", "d", "g", "k", "l", "m", "n",
                                            "p", "r", "s", "t", "v", "z"};
  static constexpr const char* kVowels[] = {"a", "e", "i", "o", "u"};
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t k = 0; out.size() < n; ++k) {
    std::size_t s1 = k % 65;
    std::size_t s2 = (k / 65 + 7 * k) % 65;
    std::string w = std::string(kOnsets[s1 % 13]) + kVowels[s1 / 13] + kOnsets[s2 % 13] +
                    kVowels[s2 / 13];
    if (k % 3 == 0) w += "n";
    if (seen.insert(w).second) out.push_back(w);
  }
  return out;
}

struct WordPlan {
  std::size_t iu;
  std::size_t index;  // within turn
  const Word* word;
};

}  // namespace

SynthData SynthCorpus(const SynthSpec& spec) {
  spec.Validate();
  std::mt19937_64 rng(spec.seed);
  auto uniform = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  auto integer = [&rng](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  std::discrete_distribution<int> prototype_dist(spec.prototype_mix.begin(),
                                                 spec.prototype_mix.end());
  std::bernoulli_distribution emphasis_dist(spec.emphasis_mix[0]);
  std::bernoulli_distribution secondary_dist(spec.secondary_share);
  std::bernoulli_distribution change_dist(spec.speaker_change_prob);
  std::normal_distribution<double> feature_noise(0.0, spec.feature_noise);
  std::normal_distribution<double> pitch_noise(0.0, spec.pitch_noise);

  SynthData data;
  data.vocabulary = PseudoWords(spec.vocabulary_words);
  std::vector<Source> sources;

  for (std::size_t n = 0; n < spec.n_turns; ++n) {
    char name[32];
    std::snprintf(name, sizeof(name), "synth-%05zu", n);
    Source src{name, std::string(name) + ".wav", {}};
    std::size_t speaker = integer(0, spec.n_speakers - 1);
    const std::size_t n_ius = integer(spec.min_ius, spec.max_ius);
    double t = 0.1;
    for (std::size_t u = 0; u < n_ius; ++u) {
      if (u > 0) {
        t += uniform(spec.min_pause_s, spec.max_pause_s);
        if (spec.n_speakers > 1 && (spec.alternate_speakers || change_dist(rng))) {
          speaker = (speaker + 1 + integer(0, spec.n_speakers - 2)) % spec.n_speakers;
        }
      }
      IntonationUnit iu;
      iu.prototype = static_cast<Prototype>(prototype_dist(rng));
      iu.speaker_id = "spk" + std::to_string(speaker);
      const std::size_t n_words = integer(spec.min_words, spec.max_words);
      for (std::size_t k = 0; k < n_words; ++k) {
        if (k > 0) t += uniform(0.0, spec.max_word_gap_s);
        Word w;
        w.text = data.vocabulary[integer(0, data.vocabulary.size() - 1)];
        w.start_s = t;
        t += uniform(spec.min_word_s, spec.max_word_s);
        w.end_s = t;
        w.speaker_id = iu.speaker_id;
        w.labels.boundary = k == 0 ? Boundary::kBegin : Boundary::kInside;
        w.labels.prototype = iu.prototype;
        w.labels.emphasis = emphasis_dist(rng)
                                ? (secondary_dist(rng) ? EmphasisLevel::kSecondary
                                                       : EmphasisLevel::kPrimary)
                                : EmphasisLevel::kNone;
        iu.words.push_back(std::move(w));
      }
      src.ius.push_back(std::move(iu));
    }
    const double end = t + 0.1;

    // Word lookup by time for features and pitch.
    std::vector<WordPlan> plan;
    for (std::size_t u = 0, idx = 0; u < src.ius.size(); ++u) {
      for (const Word& w : src.ius[u].words) plan.push_back(WordPlan{u, idx++, &w});
    }
    auto word_at = [&plan](double time) -> const WordPlan* {
      for (const auto& p : plan) {
        if (time >= p.word->start_s && time < p.word->end_s) return &p;
      }
      return nullptr;
    };
    auto log_pitch = [&](const WordPlan& p, double time) {
      const IntonationUnit& iu = src.ius[p.iu];
      double tau = (time - iu.start_s()) / iu.Duration();
      double v = ContourTemplate(*iu.prototype, tau);
      if (ToBinary(*p.word->labels.emphasis) == Emphasis::kEmphasized) {
        v += EmphasisBump((time - p.word->start_s) / p.word->Duration());
      }
      return v;
    };

    AudioFeatures f(static_cast<std::size_t>(std::ceil(end * spec.frame_rate)), kSynthChannels,
                    spec.frame_rate);
    const WordPlan* previous = nullptr;
    for (std::size_t frame = 0; frame < f.frames; ++frame) {
      double center = (static_cast<double>(frame) + 0.5) / spec.frame_rate;
      const WordPlan* p = word_at(center);
      double ch[kIndexBase] = {0, 0, 0, 0, 0, 0};
      if (p != nullptr) {
        const Word& w = *p->word;
        const IntonationUnit& iu = src.ius[p->iu];
        ch[kVoicing] = 1.0;
        ch[kLogPitch] = log_pitch(*p, center);
        ch[kWordOnset] = p != previous ? 1.0 : 0.0;
        ch[kIuOnset] = *w.labels.boundary == Boundary::kBegin ? 1.0 : 0.0;
        if (ToBinary(*w.labels.emphasis) == Emphasis::kEmphasized) {
          ch[kEmphasisRamp] = 0.3 + 0.7 * (center - w.start_s) / w.Duration();
        }
        ch[kRegister] = RegisterCode(*iu.prototype);
        for (std::size_t k = 0; k < kIndexPeriods.size(); ++k) {
          double phase = 2.0 * std::numbers::pi * static_cast<double>(p->index) / kIndexPeriods[k];
          f.at(frame, kIndexBase + 2 * k) = static_cast<float>(std::sin(phase));
          f.at(frame, kIndexBase + 2 * k + 1) = static_cast<float>(std::cos(phase));
        }
      }
      previous = p;
      for (std::size_t c = 0; c < kIndexBase; ++c) {
        f.at(frame, c) = static_cast<float>(ch[c] + feature_noise(rng));
      }
    }

    PitchTrack track;
    track.audio = src.audio;
    track.speaker_id = src.ius.front().speaker_id;
    const auto n_samples = static_cast<std::size_t>(std::floor(end * spec.pitch_rate));
    for (std::size_t k = 0; k < n_samples; ++k) {
      double time = static_cast<double>(k) / spec.pitch_rate;
      PitchSample s{time, 0.0};
      if (const WordPlan* p = word_at(time)) {
        std::size_t spk = static_cast<std::size_t>(std::stoul(p->word->speaker_id.substr(3)));
        s.f0_hz = std::exp(SpeakerBaseLogF0(spk) + log_pitch(*p, time) + pitch_noise(rng));
      }
      track.samples.push_back(s);
    }

    Turn turn;
    turn.source = src.name;
    turn.first_iu = 0;
    turn.ius = src.ius;
    data.turns.push_back(std::move(turn));
    data.features.push_back(std::move(f));
    data.pitch.push_back(std::move(track));
    sources.push_back(std::move(src));
  }

  data.corpus.provenance = Provenance{"synthetic", "generator"};
  for (std::size_t s = 0; s < spec.n_speakers; ++s) data.corpus.speakers.insert("spk" + std::to_string(s));
  data.corpus.sources = std::move(sources);
  return data;
}

}  // namespace prosody
