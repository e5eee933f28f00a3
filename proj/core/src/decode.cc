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

#include "prosody/decode.h"

#include <cmath>
#include <limits>

#include "prosody/error.h"

namespace prosody {
namespace {

class NullState : public AudioState {};

}  // namespace

DecodeResult ConstrainedDecode(const SequenceModel& model, const AudioFeatures& features,
                               std::span<const std::string> words, const Codec& codec) {
  DecodeResult result;
  if (words.empty()) return result;
  if (model.Tokens() != codec.vocab().tokens()) {
    throw InputError("decode_harness", "model vocabulary (" + std::to_string(model.Tokens().size()) +
                                           " tokens) does not match the " +
                                           std::string(ToString(codec.scheme())) +
                                           " codec vocabulary (" +
                                           std::to_string(codec.vocab().size()) + " tokens)");
  }
  const std::size_t vocab_size = codec.vocab().size();
  std::unique_ptr<AudioState> state = model.EncodeAudio(features);

  std::vector<TokenId>& prefix = result.sequence;
  prefix = codec.StartTokens();
  std::vector<TokenId> block;
  for (const std::string& word : words) {
    block.clear();
    for (std::size_t k = 0; k < codec.BlockArity(); ++k) {
      std::vector<double> logits = model.DecodeStep(prefix, *state);
      if (logits.size() != vocab_size) {
        throw InputError("decode_harness", "model returned " + std::to_string(logits.size()) +
                                               " logits for a vocabulary of " +
                                               std::to_string(vocab_size));
      }
      for (std::size_t i = 0; i < logits.size(); ++i) {
        if (!std::isfinite(logits[i])) {
          throw NumericError("decode_harness", "non-finite logit for token " + std::to_string(i) +
                                                   " at prefix length " +
                                                   std::to_string(prefix.size()));
        }
      }
      // AllowedAt is ascending, so strict comparison keeps the lowest id on ties.
      TokenId best = -1;
      double best_logit = -std::numeric_limits<double>::infinity();
      for (TokenId id : codec.AllowedAt(k)) {
        double v = logits[static_cast<std::size_t>(id)];
        if (best < 0 || v > best_logit) {
          best = id;
          best_logit = v;
        }
      }
      block.push_back(best);
      prefix.push_back(best);
      result.emitted.push_back(best);
    }
    result.labels.push_back(LabelOfClass(codec.task(), codec.TokensToClass(block)));
    for (TokenId id : codec.EncodeWord(word)) prefix.push_back(id);
  }
  prefix.push_back(codec.EndToken());
  return result;
}

OracleModel::OracleModel(const Turn& turn, const Codec& codec)
    : tokens_(codec.vocab().tokens()), gold_(codec.EncodeTurn(turn).tokens) {}

std::unique_ptr<AudioState> OracleModel::EncodeAudio(const AudioFeatures&) const {
  return std::make_unique<NullState>();
}

std::vector<double> OracleModel::DecodeStep(std::span<const TokenId> prefix,
                                            const AudioState&) const {
  std::vector<double> logits(tokens_.size(), 0.0);
  if (prefix.size() < gold_.size()) logits[static_cast<std::size_t>(gold_[prefix.size()])] = 1.0;
  return logits;
}

std::unique_ptr<SequenceModel> MakeOracleModel(const Turn& turn, const Codec& codec) {
  return std::make_unique<OracleModel>(turn, codec);
}

namespace {

WordLabels Project(const WordLabels& l, Task task) {
  switch (task) {
    case Task::kFull:
      return l;
    case Task::kBoundary:
      return WordLabels{l.boundary, std::nullopt, std::nullopt};
    case Task::kPrototype:
      return WordLabels{std::nullopt, l.prototype, std::nullopt};
    case Task::kEmphasis:
      return WordLabels{std::nullopt, std::nullopt, l.emphasis};
  }
  return l;
}

void SimplifyIus(std::vector<IntonationUnit>& ius, Task task) {
  if (task == Task::kFull) return;
  for (auto& iu : ius) {
    if (task != Task::kPrototype) iu.prototype.reset();
    for (auto& w : iu.words) w.labels = Project(w.labels, task);
  }
}

}  // namespace

Corpus SimplifyLabels(const Corpus& corpus, Task task) {
  Corpus out = corpus;
  for (auto& src : out.sources) SimplifyIus(src.ius, task);
  return out;
}

Turn SimplifyLabels(const Turn& turn, Task task) {
  Turn out = turn;
  SimplifyIus(out.ius, task);
  return out;
}

ProsodicLabel GoldLabel(const Word& word, Task task) {
  ProsodicLabel l;
  l.boundary = word.labels.boundary;
  l.prototype = word.labels.prototype;
  if (word.labels.emphasis) l.emphasis = ToBinary(*word.labels.emphasis);
  return l.Project(task);
}

}  // namespace prosody
