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

#ifndef PROSODY_CODEC_H_
#define PROSODY_CODEC_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "prosody/corpus.h"
#include "prosody/labels.h"

namespace prosody {

using TokenId = std::int32_t;

// Label-token representation.
//   raw:     tag strings over existing tokenizer pieces, "⟦b-cm-e⟧"
//   compact: one atomic token per combination, "<B|CM|E>"
//   bits:    one atomic token per feature, "<B>" "<CM>" "<E>"
enum class Scheme : std::uint8_t { kRaw, kCompact, kBits };

// Recognition task. Single-feature tasks replace the combination by the
// projected feature.
enum class Task : std::uint8_t { kFull, kBoundary, kPrototype, kEmphasis };

std::string_view ToString(Scheme s);
std::string_view ToString(Task t);
std::optional<Scheme> ParseScheme(std::string_view s);
std::optional<Task> ParseTask(std::string_view s);

// Number of label classes of a task: 12, 2, 3, 2.
int NumClasses(Task task);

// A label with only the fields a task predicts. Full-task labels carry all
// three.
struct ProsodicLabel {
  std::optional<Boundary> boundary;
  std::optional<Prototype> prototype;
  std::optional<Emphasis> emphasis;

  static ProsodicLabel FromCombo(const LabelCombination& c) {
    return ProsodicLabel{c.boundary, c.prototype, c.emphasis};
  }
  std::optional<LabelCombination> Combo() const;
  ProsodicLabel Project(Task task) const;
  friend bool operator==(const ProsodicLabel&, const ProsodicLabel&) = default;
};

// Class index of a label under a task; throws InputError when the task's
// field is missing.
int ClassOf(Task task, const ProsodicLabel& label);
ProsodicLabel LabelOfClass(Task task, int cls);

// Ordered token list; the id of a token is its position.
class Vocabulary {
 public:
  TokenId Add(const std::string& token);  // returns the existing id for duplicates
  std::optional<TokenId> Find(std::string_view token) const;
  TokenId Id(std::string_view token) const;  // throws when absent
  const std::string& Token(TokenId id) const { return tokens_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::size_t max_piece_bytes() const { return max_piece_bytes_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
  std::size_t max_piece_bytes_ = 0;
};

inline constexpr std::string_view kStartToken = "<|startoftranscript|>";
inline constexpr std::string_view kEndToken = "<|endoftext|>";

// Base vocabulary of a toy tokenizer: the two specials, single characters
// [a-z0-9'-], the raw-tag pieces "⟦" "⟧" "cm" "pd" "qu", then every
// distinct entry of `words` as a whole-word piece.
Vocabulary MakeBaseVocabulary(std::span<const std::string> words);

// Greedy longest-match tokenization over a vocabulary's pieces. Throws
// InputError when some byte cannot be covered.
std::vector<TokenId> TokenizePieces(const Vocabulary& vocab, std::string_view text);

struct InterleavedSequence {
  std::vector<TokenId> tokens;
  std::vector<bool> is_label;  // parallel to tokens
  std::size_t word_count = 0;

  std::size_t size() const { return tokens.size(); }
};

// Maps labels to token blocks and builds/parses interleaved label-word
// sequences. Compact and bits tokens are appended to the base vocabulary as
// atomic entries; raw reuses existing pieces.
class Codec {
 public:
  Codec(Scheme scheme, Task task, Vocabulary base);
  explicit Codec(Scheme scheme, Vocabulary base) : Codec(scheme, Task::kFull, std::move(base)) {}

  Scheme scheme() const { return scheme_; }
  Task task() const { return task_; }
  const Vocabulary& vocab() const { return vocab_; }

  // Ordered label strings: compact 12 tokens, bits 7 tokens, raw 12 tags
  // (single-feature tasks: one entry per class).
  const std::vector<std::string>& LabelVocabulary() const { return label_vocab_; }
  // Every id that may appear inside a label block.
  const std::vector<TokenId>& LabelTokenIds() const { return label_ids_; }
  bool IsLabelToken(TokenId id) const;

  std::size_t BlockArity() const { return arity_; }
  // Ids allowed at `position` of a label block, in ascending id order.
  const std::vector<TokenId>& AllowedAt(std::size_t position) const {
    return allowed_.at(position);
  }

  std::vector<TokenId> ClassToTokens(int cls) const;
  // Inverse of ClassToTokens. Throws DecodeError naming the offending
  // position within the block.
  int TokensToClass(std::span<const TokenId> block) const;

  // Full-task conveniences.
  std::vector<TokenId> ComboToTokens(const LabelCombination& combo) const;
  LabelCombination TokensToCombo(std::span<const TokenId> block) const;

  std::vector<TokenId> EncodeWord(std::string_view word) const;
  const std::vector<TokenId>& StartTokens() const { return start_; }
  TokenId EndToken() const { return end_; }

  // start ++ (label block ++ word tokens)* ++ end. Throws InputError on an
  // empty word list or a word lacking the task's labels.
  InterleavedSequence Encode(std::span<const Word> words) const;
  InterleavedSequence EncodeTurn(const Turn& turn) const;
  // Encoded length without materializing the sequence.
  std::size_t CountTokens(std::span<const Word> words) const;

  // One label per word. Throws DecodeError on any alternation violation.
  std::vector<ProsodicLabel> DecodeSequence(std::span<const TokenId> seq,
                                            std::span<const std::string> words) const;

 private:
  Scheme scheme_;
  Task task_;
  Vocabulary vocab_;
  std::size_t arity_ = 1;
  std::vector<std::string> label_vocab_;
  std::vector<std::vector<TokenId>> class_tokens_;
  std::vector<std::vector<TokenId>> allowed_;
  std::vector<TokenId> label_ids_;
  std::vector<bool> is_label_;
  std::vector<TokenId> start_;
  TokenId end_ = 0;
};

// Raw tag string of a class: "⟦b-cm-e⟧" for the full task, "⟦cm⟧" for the
// prototype task.
std::string RawTag(Task task, int cls);
// Atomic compact token: "<B|CM|E>".
std::string CompactToken(const LabelCombination& combo);

}  // namespace prosody

#endif  // PROSODY_CODEC_H_
