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

#include "prosody/codec.h"

#include <algorithm>

#include "prosody/error.h"

namespace prosody {
namespace {

constexpr const char* kBoundaryCode[] = {"b", "i"};
constexpr const char* kPrototypeCode[] = {"cm", "pd", "qu"};
constexpr const char* kEmphasisCode[] = {"e", "n"};

constexpr std::string_view kTagOpen = "⟦";
constexpr std::string_view kTagClose = "⟧";

std::string Upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(c >= 'a' && c <= 'z' ? c - 'a' + 'A' : c);
  return out;
}

// Feature codes of the classes of a single-feature task.
std::vector<std::string> FeatureCodes(Task task) {
  switch (task) {
    case Task::kBoundary:
      return {kBoundaryCode[0], kBoundaryCode[1]};
    case Task::kPrototype:
      return {kPrototypeCode[0], kPrototypeCode[1], kPrototypeCode[2]};
    case Task::kEmphasis:
      return {kEmphasisCode[0], kEmphasisCode[1]};
    case Task::kFull:
      break;
  }
  return {};
}

std::string FeatureToken(std::string_view code) { return "<" + Upper(code) + ">"; }

LabelCombination ComboOf(int cls) { return LabelCombination::FromIndex(cls); }

}  // namespace

std::string_view ToString(Scheme s) {
  switch (s) {
    case Scheme::kRaw:
      return "raw";
    case Scheme::kCompact:
      return "compact";
    case Scheme::kBits:
      return "bits";
  }
  return "?";
}

std::string_view ToString(Task t) {
  switch (t) {
    case Task::kFull:
      return "full";
    case Task::kBoundary:
      return "boundary";
    case Task::kPrototype:
      return "prototype";
    case Task::kEmphasis:
      return "emphasis";
  }
  return "?";
}

std::optional<Scheme> ParseScheme(std::string_view s) {
  if (s == "raw") return Scheme::kRaw;
  if (s == "compact") return Scheme::kCompact;
  if (s == "bits") return Scheme::kBits;
  return std::nullopt;
}

std::optional<Task> ParseTask(std::string_view s) {
  if (s == "full") return Task::kFull;
  if (s == "boundary") return Task::kBoundary;
  if (s == "prototype") return Task::kPrototype;
  if (s == "emphasis") return Task::kEmphasis;
  return std::nullopt;
}

int NumClasses(Task task) {
  switch (task) {
    case Task::kFull:
      return kNumCombinations;
    case Task::kBoundary:
      return kNumBoundaries;
    case Task::kPrototype:
      return kNumPrototypes;
    case Task::kEmphasis:
      return kNumEmphases;
  }
  return 0;
}

std::optional<LabelCombination> ProsodicLabel::Combo() const {
  if (!boundary || !prototype || !emphasis) return std::nullopt;
  return LabelCombination{*boundary, *prototype, *emphasis};
}

ProsodicLabel ProsodicLabel::Project(Task task) const {
  switch (task) {
    case Task::kFull:
      return *this;
    case Task::kBoundary:
      return ProsodicLabel{boundary, std::nullopt, std::nullopt};
    case Task::kPrototype:
      return ProsodicLabel{std::nullopt, prototype, std::nullopt};
    case Task::kEmphasis:
      return ProsodicLabel{std::nullopt, std::nullopt, emphasis};
  }
  return {};
}

int ClassOf(Task task, const ProsodicLabel& label) {
  auto missing = [&]() {
    return InputError("label_codec", "label lacks the fields of task " + std::string(ToString(task)));
  };
  switch (task) {
    case Task::kFull: {
      auto combo = label.Combo();
      if (!combo) throw missing();
      return combo->Index();
    }
    case Task::kBoundary:
      if (!label.boundary) throw missing();
      return static_cast<int>(*label.boundary);
    case Task::kPrototype:
      if (!label.prototype) throw missing();
      return static_cast<int>(*label.prototype);
    case Task::kEmphasis:
      if (!label.emphasis) throw missing();
      return static_cast<int>(*label.emphasis);
  }
  throw missing();
}

ProsodicLabel LabelOfClass(Task task, int cls) {
  if (cls < 0 || cls >= NumClasses(task)) {
    throw InputError("label_codec", "class " + std::to_string(cls) + " out of range");
  }
  switch (task) {
    case Task::kFull:
      return ProsodicLabel::FromCombo(ComboOf(cls));
    case Task::kBoundary:
      return ProsodicLabel{static_cast<Boundary>(cls), std::nullopt, std::nullopt};
    case Task::kPrototype:
      return ProsodicLabel{std::nullopt, static_cast<Prototype>(cls), std::nullopt};
    case Task::kEmphasis:
      return ProsodicLabel{std::nullopt, std::nullopt, static_cast<Emphasis>(cls)};
  }
  return {};
}

TokenId Vocabulary::Add(const std::string& token) {
  if (auto it = index_.find(token); it != index_.end()) return it->second;
  auto id = static_cast<TokenId>(tokens_.size());
  tokens_.push_back(token);
  index_.emplace(token, id);
  max_piece_bytes_ = std::max(max_piece_bytes_, token.size());
  return id;
}

std::optional<TokenId> Vocabulary::Find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TokenId Vocabulary::Id(std::string_view token) const {
  if (auto id = Find(token)) return *id;
  throw InputError("label_codec", "token '" + std::string(token) + "' not in vocabulary");
}

Vocabulary MakeBaseVocabulary(std::span<const std::string> words) {
  Vocabulary v;
  v.Add(std::string(kStartToken));
  v.Add(std::string(kEndToken));
  for (char c = 'a'; c <= 'z'; ++c) v.Add(std::string(1, c));
  for (char c = '0'; c <= '9'; ++c) v.Add(std::string(1, c));
  v.Add("'");
  v.Add("-");
  v.Add(std::string(kTagOpen));
  v.Add(std::string(kTagClose));
  for (const char* code : kPrototypeCode) v.Add(code);
  for (const auto& w : words) v.Add(w);
  return v;
}

std::vector<TokenId> TokenizePieces(const Vocabulary& vocab, std::string_view text) {
  std::vector<TokenId> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t longest = std::min(vocab.max_piece_bytes(), text.size() - pos);
    bool found = false;
    for (std::size_t len = longest; len > 0; --len) {
      if (auto id = vocab.Find(text.substr(pos, len))) {
        // Specials never match inside text.
        if (*id < 2) continue;
        out.push_back(*id);
        pos += len;
        found = true;
        break;
      }
    }
    if (!found) {
      throw InputError("label_codec", "cannot tokenize '" + std::string(text) + "' at byte " +
                                          std::to_string(pos));
    }
  }
  return out;
}

std::string RawTag(Task task, int cls) {
  std::string body;
  if (task == Task::kFull) {
    LabelCombination c = ComboOf(cls);
    body = std::string(kBoundaryCode[static_cast<int>(c.boundary)]) + "-" +
           kPrototypeCode[static_cast<int>(c.prototype)] + "-" +
           kEmphasisCode[static_cast<int>(c.emphasis)];
  } else {
    body = FeatureCodes(task).at(static_cast<std::size_t>(cls));
  }
  return std::string(kTagOpen) + body + std::string(kTagClose);
}

std::string CompactToken(const LabelCombination& c) {
  return "<" + Upper(kBoundaryCode[static_cast<int>(c.boundary)]) + "|" +
         Upper(kPrototypeCode[static_cast<int>(c.prototype)]) + "|" +
         Upper(kEmphasisCode[static_cast<int>(c.emphasis)]) + ">";
}

Codec::Codec(Scheme scheme, Task task, Vocabulary base)
    : scheme_(scheme), task_(task), vocab_(std::move(base)) {
  const int n = NumClasses(task);
  start_ = {vocab_.Id(kStartToken)};
  end_ = vocab_.Id(kEndToken);

  if (scheme == Scheme::kRaw) {
    arity_ = task == Task::kFull ? 7 : 3;
    allowed_.assign(arity_, {});
    for (int cls = 0; cls < n; ++cls) {
      std::string tag = RawTag(task, cls);
      label_vocab_.push_back(tag);
      std::vector<TokenId> pieces = TokenizePieces(vocab_, tag);
      if (pieces.size() != arity_) {
        throw InputError("label_codec", "raw tag " + tag + " splits into " +
                                            std::to_string(pieces.size()) + " pieces");
      }
      for (std::size_t k = 0; k < arity_; ++k) allowed_[k].push_back(pieces[k]);
      class_tokens_.push_back(std::move(pieces));
    }
  } else if (task == Task::kFull && scheme == Scheme::kCompact) {
    arity_ = 1;
    allowed_.assign(1, {});
    for (int cls = 0; cls < n; ++cls) {
      std::string token = CompactToken(ComboOf(cls));
      label_vocab_.push_back(token);
      TokenId id = vocab_.Add(token);
      allowed_[0].push_back(id);
      class_tokens_.push_back({id});
    }
  } else if (task == Task::kFull) {  // bits
    arity_ = 3;
    allowed_.assign(3, {});
    const std::vector<std::vector<std::string>> groups = {
        {kBoundaryCode[0], kBoundaryCode[1]},
        {kPrototypeCode[0], kPrototypeCode[1], kPrototypeCode[2]},
        {kEmphasisCode[0], kEmphasisCode[1]}};
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (const auto& code : groups[g]) {
        std::string token = FeatureToken(code);
        label_vocab_.push_back(token);
        allowed_[g].push_back(vocab_.Add(token));
      }
    }
    for (int cls = 0; cls < n; ++cls) {
      LabelCombination c = ComboOf(cls);
      class_tokens_.push_back({allowed_[0][static_cast<int>(c.boundary)],
                               allowed_[1][static_cast<int>(c.prototype)],
                               allowed_[2][static_cast<int>(c.emphasis)]});
    }
  } else {  // single-feature task, compact or bits: one feature token per class
    arity_ = 1;
    allowed_.assign(1, {});
    for (const auto& code : FeatureCodes(task)) {
      std::string token = FeatureToken(code);
      label_vocab_.push_back(token);
      TokenId id = vocab_.Add(token);
      allowed_[0].push_back(id);
      class_tokens_.push_back({id});
    }
  }

  is_label_.assign(vocab_.size(), false);
  for (auto& ids : allowed_) {
    // Raw positions repeat pieces across classes.
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (TokenId id : ids) is_label_[static_cast<std::size_t>(id)] = true;
  }
  for (std::size_t id = 0; id < is_label_.size(); ++id) {
    if (is_label_[id]) label_ids_.push_back(static_cast<TokenId>(id));
  }
}

bool Codec::IsLabelToken(TokenId id) const {
  return id >= 0 && static_cast<std::size_t>(id) < is_label_.size() &&
         is_label_[static_cast<std::size_t>(id)];
}

std::vector<TokenId> Codec::ClassToTokens(int cls) const {
  if (cls < 0 || cls >= NumClasses(task_)) {
    throw InputError("label_codec", "class " + std::to_string(cls) + " out of range");
  }
  return class_tokens_[static_cast<std::size_t>(cls)];
}

int Codec::TokensToClass(std::span<const TokenId> block) const {
  if (block.size() != arity_) {
    throw DecodeError("label block has arity " + std::to_string(block.size()) + ", expected " +
                          std::to_string(arity_),
                      std::min(block.size(), arity_));
  }
  for (std::size_t k = 0; k < arity_; ++k) {
    const auto& allowed = allowed_[k];
    if (std::binary_search(allowed.begin(), allowed.end(), block[k])) continue;
    if (IsLabelToken(block[k])) throw DecodeError("out-of-order label token", k);
    throw DecodeError("unknown label token", k);
  }
  for (std::size_t cls = 0; cls < class_tokens_.size(); ++cls) {
    if (std::equal(block.begin(), block.end(), class_tokens_[cls].begin())) {
      return static_cast<int>(cls);
    }
  }
  throw DecodeError("label block matches no class", 0);
}

std::vector<TokenId> Codec::ComboToTokens(const LabelCombination& combo) const {
  if (task_ != Task::kFull) {
    throw InputError("label_codec", "combination tokens require the full task");
  }
  return ClassToTokens(combo.Index());
}

LabelCombination Codec::TokensToCombo(std::span<const TokenId> block) const {
  if (task_ != Task::kFull) {
    throw InputError("label_codec", "combination tokens require the full task");
  }
  return ComboOf(TokensToClass(block));
}

std::vector<TokenId> Codec::EncodeWord(std::string_view word) const {
  return TokenizePieces(vocab_, word);
}

namespace {

ProsodicLabel LabelOfWord(const Word& w) {
  ProsodicLabel l;
  l.boundary = w.labels.boundary;
  l.prototype = w.labels.prototype;
  if (w.labels.emphasis) l.emphasis = ToBinary(*w.labels.emphasis);
  return l;
}

}  // namespace

InterleavedSequence Codec::Encode(std::span<const Word> words) const {
  if (words.empty()) throw InputError("label_codec", "cannot encode an empty turn");
  InterleavedSequence seq;
  seq.word_count = words.size();
  auto push = [&seq](TokenId id, bool label) {
    seq.tokens.push_back(id);
    seq.is_label.push_back(label);
  };
  for (TokenId id : start_) push(id, false);
  for (std::size_t i = 0; i < words.size(); ++i) {
    int cls = 0;
    try {
      cls = ClassOf(task_, LabelOfWord(words[i]));
    } catch (const InputError&) {
      throw InputError("label_codec", "word " + std::to_string(i) + " ('" + words[i].text +
                                          "') is unlabeled for task " +
                                          std::string(ToString(task_)));
    }
    for (TokenId id : class_tokens_[static_cast<std::size_t>(cls)]) push(id, true);
    for (TokenId id : EncodeWord(words[i].text)) push(id, false);
  }
  push(end_, false);
  return seq;
}

InterleavedSequence Codec::EncodeTurn(const Turn& turn) const {
  std::vector<Word> words = turn.Words();
  return Encode(words);
}

std::size_t Codec::CountTokens(std::span<const Word> words) const {
  std::size_t n = start_.size() + 1 + words.size() * arity_;
  for (const Word& w : words) n += EncodeWord(w.text).size();
  return n;
}

std::vector<ProsodicLabel> Codec::DecodeSequence(std::span<const TokenId> seq,
                                                 std::span<const std::string> words) const {
  std::size_t pos = 0;
  for (TokenId id : start_) {
    if (pos >= seq.size() || seq[pos] != id) throw DecodeError("missing start token", pos);
    ++pos;
  }
  std::vector<ProsodicLabel> out;
  out.reserve(words.size());
  for (const std::string& word : words) {
    if (pos + arity_ > seq.size()) throw DecodeError("truncated label block", seq.size());
    int cls = 0;
    try {
      cls = TokensToClass(seq.subspan(pos, arity_));
    } catch (const DecodeError& e) {
      throw DecodeError("alternation violation: expected label block", pos + e.position());
    }
    out.push_back(LabelOfClass(task_, cls));
    pos += arity_;
    for (TokenId id : EncodeWord(word)) {
      if (pos >= seq.size() || seq[pos] != id) {
        throw DecodeError("alternation violation: expected tokens of '" + word + "'", pos);
      }
      ++pos;
    }
  }
  if (pos >= seq.size() || seq[pos] != end_) throw DecodeError("missing end token", pos);
  if (pos + 1 != seq.size()) throw DecodeError("tokens after end token", pos + 1);
  return out;
}

}  // namespace prosody
