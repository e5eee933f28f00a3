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

#include "prosody/toy_model.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "prosody/error.h"
#include "prosody/io.h"

namespace prosody {

using nlohmann::json;

void ToyConfig::Validate() const {
  auto fail = [](const std::string& what) { throw InputError("decode_harness", what); };
  if (arch.width <= 0 || arch.heads <= 0 || arch.width % arch.heads != 0) {
    fail("width must be a positive multiple of heads");
  }
  if (arch.encoder_layers < 0 || arch.decoder_layers < 1) fail("invalid layer counts");
  if (arch.ffn_mult <= 0 || arch.max_positions < 2 || arch.stride <= 0) {
    fail("invalid ffn_mult, max_positions or stride");
  }
  if (!(learning_rate > 0) || !std::isfinite(learning_rate)) fail("learning_rate must be positive");
  if (!(clip_norm > 0)) fail("clip_norm must be positive");
  if (batch_tokens == 0) fail("batch_tokens must be positive");
  if (!(eval_fraction > 0 && eval_fraction < 1)) fail("eval_fraction must lie in (0, 1)");
  if (max_epochs == 0) fail("max_epochs must be positive");
}

json ToyConfig::ToJson() const {
  return {{"width", arch.width},
          {"heads", arch.heads},
          {"encoder_layers", arch.encoder_layers},
          {"decoder_layers", arch.decoder_layers},
          {"ffn_mult", arch.ffn_mult},
          {"max_positions", arch.max_positions},
          {"stride", arch.stride},
          {"learning_rate", learning_rate},
          {"clip_norm", clip_norm},
          {"batch_tokens", batch_tokens},
          {"eval_fraction", eval_fraction},
          {"max_epochs", max_epochs},
          {"patience", patience},
          {"max_steps", max_steps ? json(*max_steps) : json(nullptr)},
          {"label_loss_only", label_loss_only},
          {"seed", seed}};
}

ToyConfig ToyConfig::FromJson(const json& j) {
  ToyConfig c;
  if (!j.is_object()) throw InputError("decode_harness", "toy config must be an object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "width") c.arch.width = value.get<int>();
      else if (key == "heads") c.arch.heads = value.get<int>();
      else if (key == "encoder_layers") c.arch.encoder_layers = value.get<int>();
      else if (key == "decoder_layers") c.arch.decoder_layers = value.get<int>();
      else if (key == "ffn_mult") c.arch.ffn_mult = value.get<int>();
      else if (key == "max_positions") c.arch.max_positions = value.get<int>();
      else if (key == "stride") c.arch.stride = value.get<int>();
      else if (key == "learning_rate") c.learning_rate = value.get<double>();
      else if (key == "clip_norm") c.clip_norm = value.get<double>();
      else if (key == "batch_tokens") c.batch_tokens = value.get<std::size_t>();
      else if (key == "eval_fraction") c.eval_fraction = value.get<double>();
      else if (key == "max_epochs") c.max_epochs = value.get<std::size_t>();
      else if (key == "patience") c.patience = value.get<std::size_t>();
      else if (key == "max_steps") {
        if (value.is_null()) c.max_steps.reset();
        else c.max_steps = value.get<std::size_t>();
      } else if (key == "label_loss_only") c.label_loss_only = value.get<bool>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else throw InputError("decode_harness", "unknown toy config key '" + key + "'");
    } catch (const json::exception&) {
      throw InputError("decode_harness", "toy config key '" + key + "' has the wrong type");
    }
  }
  c.Validate();
  return c;
}

namespace {

struct ToyAudioState : AudioState {
  nn::Matrix<float> enc;
};

}  // namespace

ToyModel::ToyModel(ToyConfig config, std::vector<std::string> tokens, std::size_t channels)
    : config_(std::move(config)),
      tokens_(std::move(tokens)),
      net_(config_.arch, tokens_.size(), channels, config_.seed) {}

std::unique_ptr<AudioState> ToyModel::EncodeAudio(const AudioFeatures& features) const {
  auto state = std::make_unique<ToyAudioState>();
  ToyNet<float>::EncoderCache cache;
  state->enc = net_.Encode(features, cache);
  return state;
}

std::vector<double> ToyModel::DecodeStep(std::span<const TokenId> prefix,
                                         const AudioState& state) const {
  const auto* s = dynamic_cast<const ToyAudioState*>(&state);
  if (s == nullptr) throw InputError("decode_harness", "audio state from another model");
  ToyNet<float>::DecoderCache cache;
  nn::Matrix<float> logits = net_.Decode(prefix, s->enc, cache);
  std::vector<double> out(static_cast<std::size_t>(logits.cols()));
  for (Eigen::Index i = 0; i < logits.cols(); ++i) {
    out[static_cast<std::size_t>(i)] = logits(logits.rows() - 1, i);
  }
  return out;
}

namespace {

std::size_t TargetCount(const TrainExample& ex, bool label_only) {
  const auto& seq = ex.sequence;
  if (!label_only) return seq.size() - 1;
  std::size_t n = 0;
  for (std::size_t i = 1; i < seq.size(); ++i) n += seq.is_label[i] ? 1 : 0;
  return n;
}

class Adam {
 public:
  Adam(double lr, double clip) : lr_(lr), clip_(clip) {}

  void Step(nn::ParamList<float>& params) {
    double norm2 = 0.0;
    for (auto* p : params) norm2 += static_cast<double>(p->grad.squaredNorm());
    const double norm = std::sqrt(norm2);
    const float scale = norm > clip_ ? static_cast<float>(clip_ / norm) : 1.0f;
    ++t_;
    const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
    const auto step = static_cast<float>(lr_ * std::sqrt(c2) / c1);
    for (auto* p : params) {
      auto g = p->grad.array() * scale;
      p->m.array() = kBeta1 * p->m.array() + (1.0f - kBeta1) * g;
      p->v.array() = kBeta2 * p->v.array() + (1.0f - kBeta2) * g.square();
      p->value.array() -= step * p->m.array() / (p->v.array().sqrt() + kEps);
    }
  }

 private:
  static constexpr float kBeta1 = 0.9f;
  static constexpr float kBeta2 = 0.999f;
  static constexpr float kEps = 1e-8f;
  double lr_;
  double clip_;
  std::size_t t_ = 0;
};

void ZeroGrad(nn::ParamList<float>& params) {
  for (auto* p : params) p->grad.setZero();
}

double MeanLoss(ToyNet<float>& net, std::span<const TrainExample* const> set, bool label_only) {
  double loss = 0.0;
  std::size_t count = 0;
  for (const TrainExample* ex : set) {
    const std::size_t n = TargetCount(*ex, label_only);
    if (n == 0) continue;
    loss += net.Loss(*ex->features, ex->sequence.tokens, label_only ? &ex->sequence.is_label : nullptr,
                     1.0, false);
    count += n;
  }
  return count == 0 ? 0.0 : loss / static_cast<double>(count);
}

std::vector<nn::Matrix<float>> Snapshot(nn::ParamList<float>& params) {
  std::vector<nn::Matrix<float>> out;
  out.reserve(params.size());
  for (auto* p : params) out.push_back(p->value);
  return out;
}

}  // namespace

TrainResult TrainToy(const ToyConfig& config, std::span<const TrainExample> examples,
                     const Codec& codec, std::size_t channels,
                     const std::function<void(const EpochLog&)>& on_epoch) {
  config.Validate();
  if (examples.size() < 2) throw InputError("decode_harness", "need at least two training turns");
  for (const auto& ex : examples) {
    if (ex.features == nullptr) throw InputError("decode_harness", "training turn without features");
    if (ex.sequence.size() < 2) throw InputError("decode_harness", "training sequence too short");
  }

  TrainResult result;
  result.model = std::make_unique<ToyModel>(config, codec.vocab().tokens(), channels);
  ToyNet<float>& net = result.model->net();
  nn::ParamList<float> params = net.Params();
  const bool label_only = config.label_loss_only;

  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const auto n_eval = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(config.eval_fraction * examples.size())));
  std::vector<const TrainExample*> eval_set;
  std::vector<const TrainExample*> train_set;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < n_eval ? eval_set : train_set).push_back(&examples[order[i]]);
  }
  result.train_examples = train_set.size();
  result.eval_examples = eval_set.size();

  std::stable_sort(train_set.begin(), train_set.end(),
                   [](const TrainExample* a, const TrainExample* b) {
                     return a->sequence.size() < b->sequence.size();
                   });
  std::vector<std::vector<const TrainExample*>> batches;
  std::size_t batch_tokens = 0;
  for (const TrainExample* ex : train_set) {
    const std::size_t n = TargetCount(*ex, label_only);
    if (batches.empty() || batch_tokens + n > config.batch_tokens) {
      batches.emplace_back();
      batch_tokens = 0;
    }
    batches.back().push_back(ex);
    batch_tokens += n;
  }

  result.best_eval_loss = MeanLoss(net, eval_set, label_only);
  if (!std::isfinite(result.best_eval_loss)) {
    throw NumericError("decode_harness", "initial eval loss is not finite");
  }
  std::vector<nn::Matrix<float>> best = Snapshot(params);
  Adam adam(config.learning_rate, config.clip_norm);
  std::size_t since_best = 0;

  const bool no_steps = config.max_steps && *config.max_steps == 0;
  for (std::size_t epoch = 1; epoch <= config.max_epochs && !no_steps; ++epoch) {
    std::shuffle(batches.begin(), batches.end(), rng);
    double train_loss = 0.0;
    std::size_t train_count = 0;
    bool step_limit = false;
    for (const auto& batch : batches) {
      std::size_t total = 0;
      for (const TrainExample* ex : batch) total += TargetCount(*ex, label_only);
      if (total == 0) continue;
      ZeroGrad(params);
      for (const TrainExample* ex : batch) {
        train_loss += net.Loss(*ex->features, ex->sequence.tokens,
                               label_only ? &ex->sequence.is_label : nullptr,
                               1.0 / static_cast<double>(total), true) *
                      static_cast<double>(total);
      }
      train_count += total;
      adam.Step(params);
      ++result.steps;
      if (config.max_steps && result.steps >= *config.max_steps) {
        step_limit = true;
        break;
      }
    }
    EpochLog log;
    log.epoch = epoch;
    log.steps = result.steps;
    log.train_loss = train_count ? train_loss / static_cast<double>(train_count) : 0.0;
    log.eval_loss = MeanLoss(net, eval_set, label_only);
    result.history.push_back(log);
    if (on_epoch) on_epoch(log);
    if (!std::isfinite(log.eval_loss) || !std::isfinite(log.train_loss)) {
      throw NumericError("decode_harness", "loss diverged at epoch " + std::to_string(epoch) +
                                               " (train " + std::to_string(log.train_loss) +
                                               ", eval " + std::to_string(log.eval_loss) + ")");
    }
    if (log.eval_loss < result.best_eval_loss) {
      result.best_eval_loss = log.eval_loss;
      result.best_epoch = epoch;
      best = Snapshot(params);
      since_best = 0;
    } else if (++since_best >= config.patience) {
      break;
    }
    if (step_limit) break;
  }
  for (std::size_t i = 0; i < params.size(); ++i) params[i]->value = best[i];
  return result;
}

namespace {

constexpr char kWeightsMagic[4] = {'P', 'R', 'C', 'K'};

template <typename T>
void Put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <typename T>
T Get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw InputError("decode_harness", "truncated weights file");
  return v;
}

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("decode_harness", "cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("decode_harness", path.string() + ": " + e.what());
  }
}

}  // namespace

void SaveCheckpoint(const std::string& dir, const ToyModel& model, const Codec& codec) {
  namespace fs = std::filesystem;
  if (model.Tokens() != codec.vocab().tokens()) {
    throw InputError("decode_harness", "model and codec vocabularies differ");
  }
  fs::create_directories(dir);
  json config = {{"schema", "checkpoint"},
                 {"version", 1},
                 {"channels", model.net().channels()},
                 {"toy", model.config().ToJson()}};
  std::ofstream(fs::path(dir) / "config.json") << config.dump(2) << '\n';
  std::ofstream(fs::path(dir) / "vocabulary.json") << VocabularyManifest(codec).dump(2) << '\n';

  std::ofstream out(fs::path(dir) / "weights.bin", std::ios::binary);
  out.write(kWeightsMagic, 4);
  auto params = const_cast<ToyModel&>(model).net().Params();
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(params.size()));
  for (const auto* p : params) {
    Put<std::uint32_t>(out, static_cast<std::uint32_t>(p->name.size()));
    out.write(p->name.data(), static_cast<std::streamsize>(p->name.size()));
    Put<std::uint32_t>(out, static_cast<std::uint32_t>(p->value.rows()));
    Put<std::uint32_t>(out, static_cast<std::uint32_t>(p->value.cols()));
    out.write(reinterpret_cast<const char*>(p->value.data()),
              static_cast<std::streamsize>(p->value.size() * sizeof(float)));
  }
  if (!out) throw InputError("decode_harness", "cannot write checkpoint to " + dir);
}

Checkpoint LoadCheckpoint(const std::string& dir) {
  namespace fs = std::filesystem;
  const json config = ReadJsonFile(fs::path(dir) / "config.json");
  if (config.value("schema", "") != "checkpoint") {
    throw InputError("decode_harness", dir + " is not a checkpoint directory");
  }
  Checkpoint ck;
  ck.codec = std::make_unique<Codec>(CodecFromManifest(ReadJsonFile(fs::path(dir) / "vocabulary.json")));
  ck.model = std::make_unique<ToyModel>(ToyConfig::FromJson(config.at("toy")),
                                        ck.codec->vocab().tokens(),
                                        config.at("channels").get<std::size_t>());

  std::ifstream in(fs::path(dir) / "weights.bin", std::ios::binary);
  if (!in) throw InputError("decode_harness", "cannot read weights in " + dir);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kWeightsMagic, 4) != 0) {
    throw InputError("decode_harness", "bad weights header in " + dir);
  }
  auto params = ck.model->net().Params();
  if (Get<std::uint32_t>(in) != params.size()) {
    throw InputError("decode_harness", "weights file has a different parameter count");
  }
  for (auto* p : params) {
    std::string name(Get<std::uint32_t>(in), '\0');
    in.read(name.data(), static_cast<std::streamsize>(name.size()));
    const auto rows = Get<std::uint32_t>(in);
    const auto cols = Get<std::uint32_t>(in);
    if (name != p->name || rows != p->value.rows() || cols != p->value.cols()) {
      throw InputError("decode_harness", "weights entry '" + name + "' does not match " + p->name);
    }
    in.read(reinterpret_cast<char*>(p->value.data()),
            static_cast<std::streamsize>(p->value.size() * sizeof(float)));
    if (!in) throw InputError("decode_harness", "truncated weights file");
  }
  return ck;
}

}  // namespace prosody
