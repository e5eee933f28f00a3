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

#include "prosody/corpus.h"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "prosody/error.h"

namespace prosody {

std::optional<LabelCombination> WordLabels::Combo() const {
  if (!boundary || !prototype || !emphasis) return std::nullopt;
  return LabelCombination{*boundary, *prototype, ToBinary(*emphasis)};
}

WordLabels WordLabels::FromCombo(const LabelCombination& combo) {
  return FromCombo(combo, combo.emphasis == Emphasis::kEmphasized ? EmphasisLevel::kPrimary
                                                                   : EmphasisLevel::kNone);
}

WordLabels WordLabels::FromCombo(const LabelCombination& combo, EmphasisLevel level) {
  if (ToBinary(level) != combo.emphasis) {
    throw InputError("core_model", "emphasis level " + std::string(ToString(level)) +
                                       " contradicts " + ToString(combo));
  }
  return WordLabels{combo.boundary, combo.prototype, level};
}

std::size_t Source::WordCount() const {
  std::size_t n = 0;
  for (const auto& iu : ius) n += iu.words.size();
  return n;
}

std::size_t Corpus::IuCount() const {
  std::size_t n = 0;
  for (const auto& s : sources) n += s.ius.size();
  return n;
}

std::size_t Corpus::WordCount() const {
  std::size_t n = 0;
  for (const auto& s : sources) n += s.WordCount();
  return n;
}

std::size_t Turn::WordCount() const {
  std::size_t n = 0;
  for (const auto& iu : ius) n += iu.words.size();
  return n;
}

std::vector<Word> Turn::Words() const { return Flatten(ius); }

std::set<std::string> Turn::Speakers() const {
  std::set<std::string> out;
  for (const auto& iu : ius) out.insert(iu.speaker_id);
  return out;
}

double Turn::MaxInternalPause() const {
  double pause = 0.0;
  for (std::size_t i = 1; i < ius.size(); ++i) {
    pause = std::max(pause, ius[i].start_s() - ius[i - 1].end_s());
  }
  return pause;
}

std::string Turn::AudioRef(const std::string& audio) const {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "#%.3f-%.3f", start_s(), end_s());
  return audio + buf;
}

std::vector<IntonationUnit> GroupIntoIus(std::span<const Word> words) {
  std::vector<IntonationUnit> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Word& w = words[i];
    if (!w.labels.boundary) {
      throw InputError("core_model", "word " + std::to_string(i) + " has no boundary flag");
    }
    if (*w.labels.boundary == Boundary::kBegin || out.empty()) {
      if (*w.labels.boundary != Boundary::kBegin) {
        throw InputError("core_model", "word stream does not start with an IU boundary");
      }
      out.push_back(IntonationUnit{{}, w.labels.prototype, w.speaker_id});
    }
    out.back().words.push_back(w);
  }
  return out;
}

std::vector<Word> Flatten(std::span<const IntonationUnit> ius) {
  std::vector<Word> out;
  for (const auto& iu : ius) out.insert(out.end(), iu.words.begin(), iu.words.end());
  return out;
}

std::string Violation::Describe() const {
  std::string out = source;
  if (iu) out += " iu " + std::to_string(*iu);
  if (word) out += " word " + std::to_string(*word);
  return out + ": " + message;
}

namespace {

void CheckWord(const Corpus& corpus, const Source& src, std::size_t iu_index,
               std::size_t word_index, const Word& w, std::vector<Violation>& out) {
  auto add = [&](std::string msg) {
    out.push_back(Violation{src.name, iu_index, word_index, std::move(msg)});
  };
  if (w.end_s <= w.start_s + kTimeEpsilon) add("non-positive duration");
  if (w.start_s < -kTimeEpsilon) add("negative start time");
  if (w.text.empty()) add("empty text");
  if (std::any_of(w.text.begin(), w.text.end(),
                  [](unsigned char c) { return std::isspace(c) != 0; })) {
    add("whitespace in text");
  }
  if (std::any_of(w.text.begin(), w.text.end(),
                  [](unsigned char c) { return std::isupper(c) != 0; })) {
    add("text not lowercase");
  }
  if (!corpus.speakers.contains(w.speaker_id)) add("unknown speaker '" + w.speaker_id + "'");
}

}  // namespace

ValidationReport ValidateCorpus(const Corpus& corpus) {
  ValidationReport report;
  auto& out = report.violations;
  for (const Source& src : corpus.sources) {
    double last_start = -1e300;
    for (std::size_t u = 0; u < src.ius.size(); ++u) {
      const IntonationUnit& iu = src.ius[u];
      if (iu.words.empty()) {
        out.push_back(Violation{src.name, u, std::nullopt, "empty IU"});
        continue;
      }
      if (!corpus.speakers.contains(iu.speaker_id)) {
        out.push_back(Violation{src.name, u, std::nullopt,
                                "unknown speaker '" + iu.speaker_id + "'"});
      }
      for (std::size_t i = 0; i < iu.words.size(); ++i) {
        const Word& w = iu.words[i];
        CheckWord(corpus, src, u, i, w, out);
        auto add = [&](std::string msg) {
          out.push_back(Violation{src.name, u, i, std::move(msg)});
        };
        if (w.start_s < last_start - kTimeEpsilon) add("start time decreases");
        last_start = std::max(last_start, w.start_s);
        if (w.labels.boundary) {
          if (i == 0 && *w.labels.boundary != Boundary::kBegin) {
            add("IU-initial word lacks boundary");
          }
          if (i > 0 && *w.labels.boundary == Boundary::kBegin) add("boundary inside IU");
        }
        if (w.speaker_id != iu.speaker_id) add("speaker change inside IU");
        if (w.labels.prototype && iu.prototype && *w.labels.prototype != *iu.prototype) {
          add("prototype differs from IU prototype");
        }
        if (i > 0 && w.start_s < iu.words[i - 1].end_s - kTimeEpsilon) {
          add("overlaps previous word");
        }
      }
    }
  }
  return report;
}

}  // namespace prosody
