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

#ifndef PROSODY_TOY_NET_H_
#define PROSODY_TOY_NET_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "prosody/codec.h"
#include "prosody/error.h"
#include "prosody/features.h"
#include "prosody/nn.h"

namespace prosody {

// Architecture of the toy encoder-decoder.
struct ToyArch {
  int width = 128;
  int heads = 4;
  int encoder_layers = 2;
  int decoder_layers = 2;
  int ffn_mult = 4;
  int max_positions = 512;  // decoder positions
  int stride = 2;           // encoder frame stacking
};

// Encoder: stacked frames -> linear -> GELU -> + sinusoidal positions ->
// pre-LN blocks -> LN. Decoder: token + learned position embeddings ->
// pre-LN blocks -> LN -> tied output projection.
template <typename S>
class ToyNet {
 public:
  using Mat = nn::Matrix<S>;

  struct EncoderCache {
    Mat stacked, pre;
    std::vector<typename nn::EncoderBlock<S>::Cache> blocks;
    typename nn::LayerNorm<S>::Cache ln;
  };
  struct DecoderCache {
    std::vector<TokenId> tokens;
    Mat hidden;
    std::vector<typename nn::DecoderBlock<S>::Cache> blocks;
    typename nn::LayerNorm<S>::Cache ln;
  };

  ToyNet(const ToyArch& arch, std::size_t vocab, std::size_t channels, std::uint64_t seed)
      : arch_(arch), vocab_(vocab), channels_(channels) {
    if (arch.width <= 0 || arch.heads <= 0 || arch.width % arch.heads != 0 ||
        arch.encoder_layers < 0 || arch.decoder_layers < 1 || arch.ffn_mult <= 0 ||
        arch.max_positions <= 1 || arch.stride <= 0) {
      throw InputError("decode_harness", "invalid toy architecture");
    }
    std::mt19937_64 rng(seed);
    const int d = arch.width;
    stem_.Init("enc.stem", static_cast<int>(channels) * arch.stride, d, rng);
    encoder_.resize(static_cast<std::size_t>(arch.encoder_layers));
    for (std::size_t i = 0; i < encoder_.size(); ++i) {
      encoder_[i].Init("enc." + std::to_string(i), d, arch.heads, d * arch.ffn_mult, rng);
    }
    enc_ln_.Init("enc.ln", d);
    embed_.Init("dec.embed", static_cast<Eigen::Index>(vocab), d);
    nn::FillUniform<S>(embed_.value, static_cast<S>(0.05), rng);
    positions_.Init("dec.pos", arch.max_positions, d);
    nn::FillUniform<S>(positions_.value, static_cast<S>(0.05), rng);
    decoder_.resize(static_cast<std::size_t>(arch.decoder_layers));
    for (std::size_t i = 0; i < decoder_.size(); ++i) {
      decoder_[i].Init("dec." + std::to_string(i), d, arch.heads, d * arch.ffn_mult, rng);
    }
    dec_ln_.Init("dec.ln", d);
  }

  const ToyArch& arch() const { return arch_; }
  std::size_t vocab_size() const { return vocab_; }
  std::size_t channels() const { return channels_; }

  // Every parameter in a fixed order.
  nn::ParamList<S> Params() {
    nn::ParamList<S> out;
    stem_.Collect(out);
    for (auto& b : encoder_) b.Collect(out);
    enc_ln_.Collect(out);
    out.push_back(&embed_);
    out.push_back(&positions_);
    for (auto& b : decoder_) b.Collect(out);
    dec_ln_.Collect(out);
    return out;
  }

  Mat Encode(const AudioFeatures& f, EncoderCache& c) const {
    if (f.channels != channels_) {
      throw InputError("decode_harness", "features have " + std::to_string(f.channels) +
                                             " channels, model expects " +
                                             std::to_string(channels_));
    }
    if (f.frames == 0) throw InputError("decode_harness", "empty feature matrix");
    const auto stride = static_cast<std::size_t>(arch_.stride);
    const std::size_t rows = (f.frames + stride - 1) / stride;
    c.stacked = Mat::Zero(static_cast<Eigen::Index>(rows),
                          static_cast<Eigen::Index>(channels_ * stride));
    for (std::size_t t = 0; t < f.frames; ++t) {
      for (std::size_t ch = 0; ch < channels_; ++ch) {
        c.stacked(static_cast<Eigen::Index>(t / stride),
                  static_cast<Eigen::Index>((t % stride) * channels_ + ch)) =
            static_cast<S>(f.at(t, ch));
      }
    }
    c.pre = stem_.Forward(c.stacked);
    Mat x = nn::Gelu<S>(c.pre) + nn::SinusoidalPositions<S>(c.pre.rows(), c.pre.cols());
    c.blocks.resize(encoder_.size());
    for (std::size_t i = 0; i < encoder_.size(); ++i) x = encoder_[i].Forward(x, c.blocks[i]);
    return enc_ln_.Forward(x, c.ln);
  }

  // Logits for every position of `tokens`.
  Mat Decode(std::span<const TokenId> tokens, const Mat& enc, DecoderCache& c) const {
    if (tokens.empty()) throw InputError("decode_harness", "empty decoder input");
    if (tokens.size() > static_cast<std::size_t>(arch_.max_positions)) {
      throw InputError("decode_harness", "sequence of " + std::to_string(tokens.size()) +
                                             " tokens exceeds " +
                                             std::to_string(arch_.max_positions) + " positions");
    }
    c.tokens.assign(tokens.begin(), tokens.end());
    const auto n = static_cast<Eigen::Index>(tokens.size());
    Mat x(n, arch_.width);
    for (Eigen::Index i = 0; i < n; ++i) {
      const TokenId t = tokens[static_cast<std::size_t>(i)];
      if (t < 0 || static_cast<std::size_t>(t) >= vocab_) {
        throw InputError("decode_harness", "token id " + std::to_string(t) + " outside vocabulary");
      }
      x.row(i) = embed_.value.row(t) + positions_.value.row(i);
    }
    c.blocks.resize(decoder_.size());
    for (std::size_t i = 0; i < decoder_.size(); ++i) x = decoder_[i].Forward(x, enc, c.blocks[i]);
    c.hidden = dec_ln_.Forward(x, c.ln);
    return c.hidden * embed_.value.transpose();
  }

  // Back-propagates d logits through decoder and encoder.
  void Backward(const EncoderCache& ec, const DecoderCache& dc, const Mat& dlogits) {
    embed_.grad.noalias() += dlogits.transpose() * dc.hidden;
    Mat dx = dec_ln_.Backward(dc.ln, dlogits * embed_.value);
    Mat d_enc = Mat::Zero(ec.pre.rows(), arch_.width);
    for (std::size_t i = decoder_.size(); i-- > 0;) dx = decoder_[i].Backward(dc.blocks[i], dx, d_enc);
    for (Eigen::Index i = 0; i < dx.rows(); ++i) {
      embed_.grad.row(dc.tokens[static_cast<std::size_t>(i)]) += dx.row(i);
      positions_.grad.row(i) += dx.row(i);
    }
    Mat de = enc_ln_.Backward(ec.ln, d_enc);
    for (std::size_t i = encoder_.size(); i-- > 0;) de = encoder_[i].Backward(ec.blocks[i], de);
    stem_.Backward(ec.stacked, nn::GeluBackward<S>(ec.pre, de));
  }

  // Next-token cross-entropy of one sequence, every target weighted by
  // `weight`. Targets not selected by `target_mask` (when given) are
  // skipped. With `backward`, gradients are accumulated. Returns the
  // weighted loss sum.
  double Loss(const AudioFeatures& f, std::span<const TokenId> seq,
              const std::vector<bool>* target_mask, double weight, bool backward) {
    if (seq.size() < 2) throw InputError("decode_harness", "sequence shorter than two tokens");
    EncoderCache ec;
    DecoderCache dc;
    Mat enc = Encode(f, ec);
    Mat logits = Decode(seq.first(seq.size() - 1), enc, dc);
    std::vector<int> targets(seq.size() - 1);
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      const bool keep = target_mask == nullptr || (*target_mask)[i + 1];
      targets[i] = keep ? seq[i + 1] : -1;
    }
    Mat dlogits;
    const double loss = nn::SoftmaxCrossEntropy<S>(logits, targets, weight, dlogits);
    if (backward) Backward(ec, dc, dlogits);
    return loss;
  }

 private:
  ToyArch arch_;
  std::size_t vocab_;
  std::size_t channels_;
  nn::Linear<S> stem_;
  std::vector<nn::EncoderBlock<S>> encoder_;
  nn::LayerNorm<S> enc_ln_;
  nn::Param<S> embed_;
  nn::Param<S> positions_;
  std::vector<nn::DecoderBlock<S>> decoder_;
  nn::LayerNorm<S> dec_ln_;
};

}  // namespace prosody

#endif  // PROSODY_TOY_NET_H_
