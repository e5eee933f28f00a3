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

#ifndef PROSODY_DECODE_H_
#define PROSODY_DECODE_H_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "prosody/codec.h"
#include "prosody/corpus.h"
#include "prosody/features.h"

namespace prosody {

// Opaque per-turn output of a model's audio encoder.
class AudioState {
 public:
  virtual ~AudioState() = default;
};

// An audio encoder plus a text decoder over a fixed vocabulary.
class SequenceModel {
 public:
  virtual ~SequenceModel() = default;

  // The model's vocabulary, in id order.
  virtual const std::vector<std::string>& Tokens() const = 0;
  virtual std::unique_ptr<AudioState> EncodeAudio(const AudioFeatures& features) const = 0;
  // Next-token logits over the full vocabulary. Deterministic in
  // (prefix, state).
  virtual std::vector<double> DecodeStep(std::span<const TokenId> prefix,
                                         const AudioState& state) const = 0;
};

struct DecodeResult {
  std::vector<ProsodicLabel> labels;  // one per word
  std::vector<TokenId> emitted;       // every token chosen by argmax, in order
  std::vector<TokenId> sequence;      // final prefix including forced words
};

// Label-only inference. For each word: query the decoder, restrict the
// logits to the label tokens legal at the current block position, take the
// argmax (ties go to the lowest token id), append it, and after a complete
// block append the word's own tokens. Word tokens are never predicted.
//
// Throws InputError when the model vocabulary differs from the codec's and
// NumericError on non-finite logits.
DecodeResult ConstrainedDecode(const SequenceModel& model, const AudioFeatures& features,
                               std::span<const std::string> words, const Codec& codec);

// Test double that scores the gold next token +1 and everything else 0,
// ignoring audio and indexing the gold sequence by prefix length.
class OracleModel : public SequenceModel {
 public:
  // Throws InputError when a word of the turn is unlabeled for the codec's
  // task.
  OracleModel(const Turn& turn, const Codec& codec);

  const std::vector<std::string>& Tokens() const override { return tokens_; }
  std::unique_ptr<AudioState> EncodeAudio(const AudioFeatures& features) const override;
  std::vector<double> DecodeStep(std::span<const TokenId> prefix,
                                 const AudioState& state) const override;

 private:
  std::vector<std::string> tokens_;
  std::vector<TokenId> gold_;
};

std::unique_ptr<SequenceModel> MakeOracleModel(const Turn& turn, const Codec& codec);

// Projects every word's labels onto one feature. Task::kFull returns the
// corpus unchanged.
Corpus SimplifyLabels(const Corpus& corpus, Task task);
Turn SimplifyLabels(const Turn& turn, Task task);

// Gold labels of a word under a task.
ProsodicLabel GoldLabel(const Word& word, Task task);

}  // namespace prosody

#endif  // PROSODY_DECODE_H_
