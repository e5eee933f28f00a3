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

#ifndef PROSODY_NORMALIZE_H_
#define PROSODY_NORMALIZE_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prosody/labels.h"

namespace prosody {

// Whole-token replacements applied before any other rule, matched
// case-insensitively: "Dr." -> "doctor". Loaded from a two-column UTF-8 TSV.
class ExpansionTable {
 public:
  ExpansionTable() = default;
  explicit ExpansionTable(std::vector<std::pair<std::string, std::string>> entries);

  // ~50 common English abbreviations.
  static ExpansionTable Default();
  static ExpansionTable Empty() { return ExpansionTable{}; }
  // Lines are "pattern<TAB>replacement"; blank lines and lines starting with
  // '#' are skipped.
  static ExpansionTable ParseTsv(std::istream& in);

  std::optional<std::string> Lookup(std::string_view token) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  // FNV-1a over the serialized table, hex encoded. Recorded in corpus
  // manifests.
  std::string Checksum() const;

  // Integer-to-words expansion for 0..1,000,000. Enabled by default.
  bool expand_numbers = true;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;  // patterns lowercased
};

// "1234" -> "one thousand two hundred thirty four". Empty when out of range.
std::optional<std::string> NumberToWords(long long value);

struct SpeakerSpan {
  std::string speaker_id;
  std::size_t begin = 0;  // byte offsets into RawTranscript::text
  std::size_t end = 0;
};

struct RawTranscript {
  std::string text;
  std::vector<SpeakerSpan> speakers;
};

// Splits a transcript on ">>SPEAKER_ID:" headers. Text before the first
// header is attributed to the speaker "unknown".
RawTranscript ParseTranscript(std::string_view text);

// A normalized word, or one of the punctuation events ",", ".", "?".
struct TextToken {
  enum class Kind { kWord, kPunct };
  Kind kind = Kind::kWord;
  std::string text;
  std::string speaker_id;

  bool is_word() const { return kind == Kind::kWord; }
  friend bool operator==(const TextToken&, const TextToken&) = default;
};

struct NormalizeResult {
  std::vector<TextToken> tokens;
  std::vector<std::string> warnings;
};

// Lowercases, expands abbreviations and numbers, maps "--" ";" ":" to ","
// and "!" to ".", and drops other punctuation with a warning.
NormalizeResult NormalizeText(const RawTranscript& raw, const ExpansionTable& table);

// Joins tokens with single spaces. Re-normalizing the rendering yields the
// same tokens.
std::string RenderTokens(const std::vector<TextToken>& tokens);

// Word run between punctuation marks, the stand-in for an IU before manual
// annotation.
struct ProtoIU {
  std::vector<std::string> words;
  std::string speaker_id;
  std::optional<Prototype> suggested_prototype;  // empty when unlabeled
  bool short_flag = false;                       // words.size() <= kShortProtoIuWords
};

inline constexpr std::size_t kShortProtoIuWords = 7;

struct SegmentResult {
  std::vector<ProtoIU> proto_ius;
  std::vector<std::string> warnings;
};

// One ProtoIU per maximal punctuation-free word run. A speaker change also
// closes the current run (unlabeled).
SegmentResult ProxySegment(const std::vector<TextToken>& tokens);

}  // namespace prosody

#endif  // PROSODY_NORMALIZE_H_
