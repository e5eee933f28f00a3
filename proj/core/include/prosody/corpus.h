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

#ifndef PROSODY_CORPUS_H_
#define PROSODY_CORPUS_H_

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "prosody/labels.h"

namespace prosody {

// Equality tolerance for word times, in seconds. Alignment output is
// centisecond-scale.
inline constexpr double kTimeEpsilon = 1e-4;

// Per-word labels. Fields stay empty until annotated; ingestion fills the
// boundary and a suggested prototype, annotation fills the rest.
struct WordLabels {
  std::optional<Boundary> boundary;
  std::optional<Prototype> prototype;
  std::optional<EmphasisLevel> emphasis;

  // The model-task triple, when all three fields are set.
  std::optional<LabelCombination> Combo() const;
  static WordLabels FromCombo(const LabelCombination& combo);
  static WordLabels FromCombo(const LabelCombination& combo, EmphasisLevel level);
};

// A time-aligned token: the atomic annotation unit.
struct Word {
  std::string text;
  double start_s = 0.0;
  double end_s = 0.0;
  std::string speaker_id;
  WordLabels labels;
  // Set on words whose prototype suggestion could not be derived from
  // punctuation and must be checked by an annotator.
  bool needs_review = false;

  double Duration() const { return end_s - start_s; }
  std::optional<LabelCombination> Combo() const { return labels.Combo(); }
};

struct IntonationUnit {
  std::vector<Word> words;
  std::optional<Prototype> prototype;
  std::string speaker_id;

  double start_s() const { return words.front().start_s; }
  double end_s() const { return words.back().end_s; }
  double Duration() const { return end_s() - start_s(); }
};

// Word stream of one audio source, grouped into intonation units.
struct Source {
  std::string name;
  std::string audio;
  std::vector<IntonationUnit> ius;

  std::size_t WordCount() const;
};

struct Provenance {
  std::string source_name;
  std::string annotator_id;
};

struct Corpus {
  std::vector<Source> sources;
  std::set<std::string> speakers;
  Provenance provenance;

  std::size_t IuCount() const;
  std::size_t WordCount() const;
};

// A model-input segment: one or more consecutive IUs of a single source.
struct Turn {
  std::string source;
  std::size_t first_iu = 0;  // index into Source::ius
  std::vector<IntonationUnit> ius;
  std::size_t token_count = 0;
  // Constraint flags. A flagged turn is emitted, never dropped.
  bool oversize = false;
  bool below_min_ius = false;

  double start_s() const { return ius.front().start_s(); }
  double end_s() const { return ius.back().end_s(); }
  double Duration() const { return end_s() - start_s(); }
  std::size_t WordCount() const;
  std::vector<Word> Words() const;
  std::set<std::string> Speakers() const;
  // Longest silence between consecutive IUs of this turn.
  double MaxInternalPause() const;
  // "<audio>#<start>-<end>" with millisecond precision.
  std::string AudioRef(const std::string& audio) const;
};

// Splits a labeled word stream at boundary flags. Every word must carry a
// boundary; the IU prototype is taken from the IU-initial word.
std::vector<IntonationUnit> GroupIntoIus(std::span<const Word> words);
std::vector<Word> Flatten(std::span<const IntonationUnit> ius);

struct Violation {
  std::string source;
  std::optional<std::size_t> iu;
  std::optional<std::size_t> word;  // index within the IU
  std::string message;

  std::string Describe() const;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Lists every invariant violation of a parsed corpus. Never throws.
ValidationReport ValidateCorpus(const Corpus& corpus);

}  // namespace prosody

#endif  // PROSODY_CORPUS_H_
