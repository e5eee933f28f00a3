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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "prosody/decode.h"
#include "prosody/error.h"
#include "prosody/metrics.h"
#include "prosody/synth.h"
#include "prosody/toy_model.h"
#include "prosody/toy_net.h"

namespace prosody {
namespace {

ToyArch TinyArch() {
  ToyArch a;
  a.width = 8;
  a.heads = 2;
  a.encoder_layers = 1;
  a.decoder_layers = 2;
  a.ffn_mult = 2;
  a.max_positions = 16;
  return a;
}

// Central differences against the analytic gradient of every parameter
// tensor, in double precision.
void CheckGradients(const std::vector<bool>* mask) {
  ToyNet<double> net(TinyArch(), 11, 3, 5);
  AudioFeatures f(7, 3, 25.0);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  for (auto& v : f.values) v = static_cast<float>(normal(rng));
  const std::vector<TokenId> seq = {0, 3, 5, 7, 2, 9, 1};
  auto params = net.Params();
  for (auto* p : params) {
    nn::FillUniform<double>(p->value, 0.5, rng);
    p->grad.setZero();
  }
  net.Loss(f, seq, mask, 1.0, true);
  int checked = 0;
  for (auto* p : params) {
    std::uniform_int_distribution<long> pick(0, p->value.size() - 1);
    for (int n = 0; n < 6; ++n) {
      const long k = n < 3 ? std::min<long>(n, p->value.size() - 1) : pick(rng);
      double& x = p->value.data()[k];
      const double x0 = x, h = 1e-6;
      x = x0 + h;
      const double lp = net.Loss(f, seq, mask, 1.0, false);
      x = x0 - h;
      const double lm = net.Loss(f, seq, mask, 1.0, false);
      x = x0;
      const double numeric = (lp - lm) / (2 * h);
      const double analytic = p->grad.data()[k];
      ASSERT_NEAR(analytic, numeric, 1e-6 + 1e-4 * std::abs(numeric)) << p->name << "[" << k << "]";
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(ToyNet, GradientsMatchFiniteDifferences) { CheckGradients(nullptr); }

TEST(ToyNet, MaskedGradientsMatchFiniteDifferences) {
  const std::vector<bool> mask = {false, true, false, true, false, true, false};
  CheckGradients(&mask);
}

TEST(ToyNet, RejectsWrongChannelCount) {
  ToyNet<float> net(TinyArch(), 11, 3, 5);
  AudioFeatures f(7, 4, 25.0);
  const std::vector<TokenId> seq = {0, 1};
  EXPECT_THROW(net.Loss(f, seq, nullptr, 1.0, false), InputError);
}

TEST(ToyConfig, JsonRoundTripAndUnknownKeys) {
  ToyConfig c;
  c.learning_rate = 3e-3;
  c.arch.width = 64;
  c.max_steps = 10;
  const ToyConfig d = ToyConfig::FromJson(c.ToJson());
  EXPECT_EQ(d.ToJson(), c.ToJson());
  auto j = c.ToJson();
  j["dropout"] = 0.1;
  EXPECT_THROW(ToyConfig::FromJson(j), InputError);
  ToyConfig bad;
  bad.arch.heads = 3;  // does not divide the width
  EXPECT_THROW(bad.Validate(), InputError);
}

struct Fixture {
  SynthData data;
  Codec codec;
  std::vector<TrainExample> examples;

  explicit Fixture(std::size_t n, std::uint64_t seed = 7, double emphasized = 0.35)
      : data(Make(n, seed, emphasized)),
        codec(Scheme::kCompact, Task::kFull, MakeBaseVocabulary(data.vocabulary)) {
    for (std::size_t i = 0; i < data.turns.size(); ++i) {
      examples.push_back({&data.features[i], codec.EncodeTurn(data.turns[i])});
    }
  }
  static SynthData Make(std::size_t n, std::uint64_t seed, double emphasized) {
    SynthSpec spec;
    spec.n_turns = n;
    spec.seed = seed;
    spec.emphasis_mix = {emphasized, 1 - emphasized};
    return SynthCorpus(spec);
  }
};

ToyConfig SmallConfig() {
  ToyConfig c;
  c.arch.width = 16;
  c.arch.heads = 2;
  c.arch.encoder_layers = 1;
  c.arch.decoder_layers = 1;
  c.learning_rate = 3e-3;
  c.max_epochs = 3;
  c.eval_fraction = 0.1;
  return c;
}

std::vector<std::string> WordsOf(const Turn& t) {
  std::vector<std::string> out;
  for (const auto& w : t.Words()) out.push_back(w.text);
  return out;
}

TEST(TrainToy, ZeroStepsIsChanceLevel) {
  Fixture fx(60, 11, 0.5);
  ToyConfig c = SmallConfig();
  c.max_steps = 0;
  const TrainResult r = TrainToy(c, fx.examples, fx.codec, kSynthChannels);
  EXPECT_EQ(r.steps, 0u);
  EXPECT_EQ(r.best_epoch, 0u);
  std::vector<LabeledPair> pairs;
  for (std::size_t i = 0; i < fx.data.turns.size(); ++i) {
    const auto out = ConstrainedDecode(*r.model, fx.data.features[i], WordsOf(fx.data.turns[i]), fx.codec);
    for (TokenId id : out.emitted) ASSERT_TRUE(fx.codec.IsLabelToken(id));
    const auto words = fx.data.turns[i].Words();
    for (std::size_t k = 0; k < words.size(); ++k) {
      pairs.push_back({GoldLabel(words[k], Task::kFull), out.labels[k], i, k, k == 0, ""});
    }
  }
  EXPECT_LT(std::abs(EmphasisMetrics(pairs).kappa), 0.2);
}

TEST(TrainToy, LossDecreasesAndHistoryIsLogged) {
  Fixture fx(60);
  std::vector<EpochLog> seen;
  const TrainResult r =
      TrainToy(SmallConfig(), fx.examples, fx.codec, kSynthChannels, [&](const EpochLog& e) { seen.push_back(e); });
  ASSERT_EQ(r.history.size(), seen.size());
  ASSERT_GE(r.history.size(), 2u);
  EXPECT_LT(r.history.back().train_loss, r.history.front().train_loss);
  EXPECT_GT(r.steps, 0u);
  EXPECT_EQ(r.train_examples + r.eval_examples, fx.examples.size());
}

TEST(TrainToy, DeterministicInSeed) {
  Fixture fx(30);
  ToyConfig c = SmallConfig();
  c.max_epochs = 1;
  const TrainResult a = TrainToy(c, fx.examples, fx.codec, kSynthChannels);
  const TrainResult b = TrainToy(c, fx.examples, fx.codec, kSynthChannels);
  EXPECT_EQ(a.history.back().train_loss, b.history.back().train_loss);
}

TEST(Checkpoint, RoundTripGivesIdenticalLogits) {
  Fixture fx(20);
  ToyConfig c = SmallConfig();
  c.max_epochs = 1;
  const TrainResult r = TrainToy(c, fx.examples, fx.codec, kSynthChannels);
  const auto dir = std::filesystem::temp_directory_path() / "prosody_ckpt_test";
  std::filesystem::remove_all(dir);
  SaveCheckpoint(dir.string(), *r.model, fx.codec);
  const Checkpoint back = LoadCheckpoint(dir.string());
  EXPECT_EQ(back.codec->vocab().tokens(), fx.codec.vocab().tokens());
  const auto s1 = r.model->EncodeAudio(fx.data.features[0]);
  const auto s2 = back.model->EncodeAudio(fx.data.features[0]);
  const std::vector<TokenId> prefix = fx.codec.StartTokens();
  EXPECT_EQ(r.model->DecodeStep(prefix, *s1), back.model->DecodeStep(prefix, *s2));
  std::filesystem::remove_all(dir);
}

TEST(Checkpoint, MissingDirectoryIsAnInputError) {
  EXPECT_THROW(LoadCheckpoint("/nonexistent/prosody/ckpt"), InputError);
}

}  // namespace
}  // namespace prosody
