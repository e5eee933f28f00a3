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

#ifndef PROSODY_TOY_MODEL_H_
#define PROSODY_TOY_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "prosody/codec.h"
#include "prosody/decode.h"
#include "prosody/features.h"
#include "prosody/toy_net.h"

namespace prosody {

struct ToyConfig {
  ToyArch arch;
  double learning_rate = 1e-5;
  double clip_norm = 1.0;
  std::size_t batch_tokens = 256;
  double eval_fraction = 0.05;
  std::size_t max_epochs = 15;
  std::size_t patience = 3;
  // Stop after this many optimizer steps; 0 returns the initialization.
  std::optional<std::size_t> max_steps;
  bool label_loss_only = false;
  std::uint64_t seed = 7;

  // Throws InputError on out-of-range values.
  void Validate() const;
  nlohmann::json ToJson() const;
  // Missing keys keep their defaults; unknown keys are rejected.
  static ToyConfig FromJson(const nlohmann::json& j);
};

// A trained toy network behind the SequenceModel interface.
class ToyModel : public SequenceModel {
 public:
  ToyModel(ToyConfig config, std::vector<std::string> tokens, std::size_t channels);

  const std::vector<std::string>& Tokens() const override { return tokens_; }
  std::unique_ptr<AudioState> EncodeAudio(const AudioFeatures& features) const override;
  std::vector<double> DecodeStep(std::span<const TokenId> prefix,
                                 const AudioState& state) const override;

  const ToyConfig& config() const { return config_; }
  ToyNet<float>& net() { return net_; }
  const ToyNet<float>& net() const { return net_; }

 private:
  ToyConfig config_;
  std::vector<std::string> tokens_;
  ToyNet<float> net_;
};

// One training example: a turn's features and its encoded sequence.
struct TrainExample {
  const AudioFeatures* features = nullptr;
  InterleavedSequence sequence;
};

struct EpochLog {
  std::size_t epoch = 0;
  std::size_t steps = 0;  // cumulative
  double train_loss = 0.0;
  double eval_loss = 0.0;
};

struct TrainResult {
  std::unique_ptr<ToyModel> model;  // parameters of the best eval epoch
  std::vector<EpochLog> history;
  std::size_t best_epoch = 0;  // 0 = initialization
  double best_eval_loss = 0.0;
  std::size_t steps = 0;
  std::size_t train_examples = 0;
  std::size_t eval_examples = 0;
};

// Next-token cross-entropy training with Adam and global-norm clipping.
// A seeded fraction of the examples is held out for evaluation; the rest is
// sorted by length and packed into batches of at most `batch_tokens` target
// tokens, visited in a shuffled order every epoch. Training stops after
// `patience` epochs without eval improvement.
//
// Throws NumericError when the eval loss is not finite.
TrainResult TrainToy(const ToyConfig& config, std::span<const TrainExample> examples,
                     const Codec& codec, std::size_t channels,
                     const std::function<void(const EpochLog&)>& on_epoch = {});

// Directory with config.json, vocabulary.json and weights.bin.
void SaveCheckpoint(const std::string& dir, const ToyModel& model, const Codec& codec);
struct Checkpoint {
  std::unique_ptr<ToyModel> model;
  std::unique_ptr<Codec> codec;
};
Checkpoint LoadCheckpoint(const std::string& dir);

}  // namespace prosody

#endif  // PROSODY_TOY_MODEL_H_
