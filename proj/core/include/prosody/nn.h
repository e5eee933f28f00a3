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

#ifndef PROSODY_NN_H_
#define PROSODY_NN_H_

// Minimal transformer building blocks with explicit forward and backward
// passes. Activations are row-major, one row per position. Every Forward
// fills a cache that the matching Backward consumes; Backward accumulates
// parameter gradients and returns input gradients.

#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace prosody::nn {

template <typename S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename S>
struct Param {
  std::string name;
  Matrix<S> value;
  Matrix<S> grad;
  Matrix<S> m;  // Adam moments
  Matrix<S> v;

  void Init(std::string n, Eigen::Index rows, Eigen::Index cols) {
    name = std::move(n);
    value = Matrix<S>::Zero(rows, cols);
    grad = Matrix<S>::Zero(rows, cols);
    m = Matrix<S>::Zero(rows, cols);
    v = Matrix<S>::Zero(rows, cols);
  }
};

template <typename S>
using ParamList = std::vector<Param<S>*>;

template <typename S>
void FillUniform(Matrix<S>& m, S bound, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-static_cast<double>(bound),
                                              static_cast<double>(bound));
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = static_cast<S>(dist(rng));
}

template <typename S>
struct Linear {
  Param<S> w;  // in x out
  Param<S> b;  // 1 x out

  void Init(const std::string& name, int in, int out, std::mt19937_64& rng) {
    w.Init(name + ".w", in, out);
    b.Init(name + ".b", 1, out);
    FillUniform<S>(w.value, static_cast<S>(std::sqrt(6.0 / (in + out))), rng);
  }
  void Collect(ParamList<S>& out) {
    out.push_back(&w);
    out.push_back(&b);
  }
  Matrix<S> Forward(const Matrix<S>& x) const {
    Matrix<S> y = x * w.value;
    y.rowwise() += b.value.row(0);
    return y;
  }
  Matrix<S> Backward(const Matrix<S>& x, const Matrix<S>& dy) {
    w.grad.noalias() += x.transpose() * dy;
    b.grad += dy.colwise().sum();
    return dy * w.value.transpose();
  }
};

template <typename S>
struct LayerNorm {
  Param<S> gamma;
  Param<S> beta;
  static constexpr double kEps = 1e-5;

  struct Cache {
    Matrix<S> xhat;
    Eigen::Matrix<S, Eigen::Dynamic, 1> rstd;
  };

  void Init(const std::string& name, int dim) {
    gamma.Init(name + ".gamma", 1, dim);
    beta.Init(name + ".beta", 1, dim);
    gamma.value.setOnes();
  }
  void Collect(ParamList<S>& out) {
    out.push_back(&gamma);
    out.push_back(&beta);
  }
  Matrix<S> Forward(const Matrix<S>& x, Cache& c) const {
    const auto n = static_cast<S>(x.cols());
    auto mean = x.rowwise().sum() / n;
    c.xhat = x.colwise() - mean;
    c.rstd = ((c.xhat.array().square().rowwise().sum() / n) + static_cast<S>(kEps)).rsqrt();
    c.xhat.array().colwise() *= c.rstd.array();
    Matrix<S> y = c.xhat.array().rowwise() * gamma.value.row(0).array();
    y.rowwise() += beta.value.row(0);
    return y;
  }
  Matrix<S> Backward(const Cache& c, const Matrix<S>& dy) {
    gamma.grad += (dy.array() * c.xhat.array()).colwise().sum().matrix();
    beta.grad += dy.colwise().sum();
    Matrix<S> dxhat = dy.array().rowwise() * gamma.value.row(0).array();
    const auto n = static_cast<S>(dy.cols());
    Eigen::Matrix<S, Eigen::Dynamic, 1> mean_d = dxhat.rowwise().sum() / n;
    Eigen::Matrix<S, Eigen::Dynamic, 1> mean_dx =
        (dxhat.array() * c.xhat.array()).rowwise().sum() / n;
    Matrix<S> dx = dxhat;
    dx.colwise() -= mean_d;
    dx.array() -= c.xhat.array().colwise() * mean_dx.array();
    dx.array().colwise() *= c.rstd.array();
    return dx;
  }
};

// tanh approximation.
template <typename S>
Matrix<S> Gelu(const Matrix<S>& x) {
  const S c = static_cast<S>(0.7978845608028654);
  return x.unaryExpr([c](S v) {
    return static_cast<S>(0.5) * v *
           (static_cast<S>(1) + std::tanh(c * (v + static_cast<S>(0.044715) * v * v * v)));
  });
}

template <typename S>
Matrix<S> GeluBackward(const Matrix<S>& x, const Matrix<S>& dy) {
  const S c = static_cast<S>(0.7978845608028654);
  Matrix<S> d = x.unaryExpr([c](S v) {
    const S t = std::tanh(c * (v + static_cast<S>(0.044715) * v * v * v));
    return static_cast<S>(0.5) * (static_cast<S>(1) + t) +
           static_cast<S>(0.5) * v * (static_cast<S>(1) - t * t) * c *
               (static_cast<S>(1) + static_cast<S>(3 * 0.044715) * v * v);
  });
  return d.cwiseProduct(dy);
}

template <typename S>
struct Attention {
  Linear<S> q, k, v, o;
  int heads = 1;
  bool causal = false;

  struct Cache {
    Matrix<S> xq, xkv, Q, K, V, O;
    std::vector<Matrix<S>> P;  // per head
  };

  void Init(const std::string& name, int dim, int n_heads, bool is_causal, std::mt19937_64& rng) {
    heads = n_heads;
    causal = is_causal;
    q.Init(name + ".q", dim, dim, rng);
    k.Init(name + ".k", dim, dim, rng);
    v.Init(name + ".v", dim, dim, rng);
    o.Init(name + ".o", dim, dim, rng);
  }
  void Collect(ParamList<S>& out) {
    q.Collect(out);
    k.Collect(out);
    v.Collect(out);
    o.Collect(out);
  }

  Matrix<S> Forward(const Matrix<S>& xq, const Matrix<S>& xkv, Cache& c) const {
    c.xq = xq;
    c.xkv = xkv;
    c.Q = q.Forward(xq);
    c.K = k.Forward(xkv);
    c.V = v.Forward(xkv);
    const Eigen::Index lq = xq.rows();
    const Eigen::Index lk = xkv.rows();
    const Eigen::Index dh = c.Q.cols() / heads;
    const S scale = static_cast<S>(1.0 / std::sqrt(static_cast<double>(dh)));
    c.O.resize(lq, c.Q.cols());
    c.P.resize(static_cast<std::size_t>(heads));
    for (int h = 0; h < heads; ++h) {
      Matrix<S> s = (c.Q.middleCols(h * dh, dh) * c.K.middleCols(h * dh, dh).transpose()) * scale;
      if (causal) {
        for (Eigen::Index i = 0; i < lq; ++i) {
          for (Eigen::Index j = i + 1; j < lk; ++j) s(i, j) = -std::numeric_limits<S>::infinity();
        }
      }
      auto row_max = s.rowwise().maxCoeff();
      Matrix<S> p = (s.colwise() - row_max).array().exp();
      p.array().colwise() /= p.rowwise().sum().array();
      c.O.middleCols(h * dh, dh).noalias() = p * c.V.middleCols(h * dh, dh);
      c.P[static_cast<std::size_t>(h)] = std::move(p);
    }
    return o.Forward(c.O);
  }

  // Returns (d xq, d xkv).
  std::pair<Matrix<S>, Matrix<S>> Backward(const Cache& c, const Matrix<S>& dy) {
    Matrix<S> dO = o.Backward(c.O, dy);
    const Eigen::Index dh = c.Q.cols() / heads;
    const S scale = static_cast<S>(1.0 / std::sqrt(static_cast<double>(dh)));
    Matrix<S> dQ(c.Q.rows(), c.Q.cols());
    Matrix<S> dK(c.K.rows(), c.K.cols());
    Matrix<S> dV(c.V.rows(), c.V.cols());
    for (int h = 0; h < heads; ++h) {
      const Matrix<S>& p = c.P[static_cast<std::size_t>(h)];
      auto dOh = dO.middleCols(h * dh, dh);
      dV.middleCols(h * dh, dh).noalias() = p.transpose() * dOh;
      Matrix<S> dP = dOh * c.V.middleCols(h * dh, dh).transpose();
      Eigen::Matrix<S, Eigen::Dynamic, 1> rs = (dP.array() * p.array()).rowwise().sum();
      Matrix<S> dS = p.array() * (dP.array().colwise() - rs.array());
      dQ.middleCols(h * dh, dh).noalias() = (dS * c.K.middleCols(h * dh, dh)) * scale;
      dK.middleCols(h * dh, dh).noalias() = (dS.transpose() * c.Q.middleCols(h * dh, dh)) * scale;
    }
    Matrix<S> dxq = q.Backward(c.xq, dQ);
    Matrix<S> dxkv = k.Backward(c.xkv, dK) + v.Backward(c.xkv, dV);
    return {std::move(dxq), std::move(dxkv)};
  }
};

template <typename S>
struct FeedForward {
  Linear<S> in, out;

  struct Cache {
    Matrix<S> x, h;
  };

  void Init(const std::string& name, int dim, int hidden, std::mt19937_64& rng) {
    in.Init(name + ".in", dim, hidden, rng);
    out.Init(name + ".out", hidden, dim, rng);
  }
  void Collect(ParamList<S>& list) {
    in.Collect(list);
    out.Collect(list);
  }
  Matrix<S> Forward(const Matrix<S>& x, Cache& c) const {
    c.x = x;
    c.h = in.Forward(x);
    return out.Forward(Gelu<S>(c.h));
  }
  Matrix<S> Backward(const Cache& c, const Matrix<S>& dy) {
    Matrix<S> dg = out.Backward(Gelu<S>(c.h), dy);
    return in.Backward(c.x, GeluBackward<S>(c.h, dg));
  }
};

// Pre-LN: x + Attn(LN x); x + FFN(LN x).
template <typename S>
struct EncoderBlock {
  LayerNorm<S> ln1, ln2;
  Attention<S> attn;
  FeedForward<S> ffn;

  struct Cache {
    typename LayerNorm<S>::Cache ln1, ln2;
    typename Attention<S>::Cache attn;
    typename FeedForward<S>::Cache ffn;
  };

  void Init(const std::string& name, int dim, int heads, int hidden, std::mt19937_64& rng) {
    ln1.Init(name + ".ln1", dim);
    ln2.Init(name + ".ln2", dim);
    attn.Init(name + ".attn", dim, heads, false, rng);
    ffn.Init(name + ".ffn", dim, hidden, rng);
  }
  void Collect(ParamList<S>& out) {
    ln1.Collect(out);
    attn.Collect(out);
    ln2.Collect(out);
    ffn.Collect(out);
  }
  Matrix<S> Forward(const Matrix<S>& x, Cache& c) const {
    Matrix<S> a = ln1.Forward(x, c.ln1);
    Matrix<S> x1 = x + attn.Forward(a, a, c.attn);
    return x1 + ffn.Forward(ln2.Forward(x1, c.ln2), c.ffn);
  }
  Matrix<S> Backward(const Cache& c, const Matrix<S>& dy) {
    Matrix<S> dx1 = dy + ln2.Backward(c.ln2, ffn.Backward(c.ffn, dy));
    auto [dq, dkv] = attn.Backward(c.attn, dx1);
    return dx1 + ln1.Backward(c.ln1, dq + dkv);
  }
};

// Pre-LN: causal self-attention, cross-attention over the encoder output,
// feed-forward.
template <typename S>
struct DecoderBlock {
  LayerNorm<S> ln1, ln2, ln3;
  Attention<S> self_attn, cross_attn;
  FeedForward<S> ffn;

  struct Cache {
    typename LayerNorm<S>::Cache ln1, ln2, ln3;
    typename Attention<S>::Cache self_attn, cross_attn;
    typename FeedForward<S>::Cache ffn;
  };

  void Init(const std::string& name, int dim, int heads, int hidden, std::mt19937_64& rng) {
    ln1.Init(name + ".ln1", dim);
    ln2.Init(name + ".ln2", dim);
    ln3.Init(name + ".ln3", dim);
    self_attn.Init(name + ".self", dim, heads, true, rng);
    cross_attn.Init(name + ".cross", dim, heads, false, rng);
    ffn.Init(name + ".ffn", dim, hidden, rng);
  }
  void Collect(ParamList<S>& out) {
    ln1.Collect(out);
    self_attn.Collect(out);
    ln2.Collect(out);
    cross_attn.Collect(out);
    ln3.Collect(out);
    ffn.Collect(out);
  }
  Matrix<S> Forward(const Matrix<S>& x, const Matrix<S>& enc, Cache& c) const {
    Matrix<S> a = ln1.Forward(x, c.ln1);
    Matrix<S> x1 = x + self_attn.Forward(a, a, c.self_attn);
    Matrix<S> x2 = x1 + cross_attn.Forward(ln2.Forward(x1, c.ln2), enc, c.cross_attn);
    return x2 + ffn.Forward(ln3.Forward(x2, c.ln3), c.ffn);
  }
  // Returns d x and adds the encoder-output gradient to `d_enc`.
  Matrix<S> Backward(const Cache& c, const Matrix<S>& dy, Matrix<S>& d_enc) {
    Matrix<S> dx2 = dy + ln3.Backward(c.ln3, ffn.Backward(c.ffn, dy));
    auto [dq_cross, dkv_cross] = cross_attn.Backward(c.cross_attn, dx2);
    d_enc += dkv_cross;
    Matrix<S> dx1 = dx2 + ln2.Backward(c.ln2, dq_cross);
    auto [dq, dkv] = self_attn.Backward(c.self_attn, dx1);
    return dx1 + ln1.Backward(c.ln1, dq + dkv);
  }
};

// Sinusoidal position table, rows = positions.
template <typename S>
Matrix<S> SinusoidalPositions(Eigen::Index rows, Eigen::Index dim) {
  Matrix<S> pe(rows, dim);
  for (Eigen::Index p = 0; p < rows; ++p) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double rate = std::pow(10000.0, -static_cast<double>(2 * (i / 2)) / dim);
      pe(p, i) = static_cast<S>(i % 2 == 0 ? std::sin(p * rate) : std::cos(p * rate));
    }
  }
  return pe;
}

// Mean cross-entropy contribution of rows with a target >= 0, scaled by
// `weight`; writes d logits (already scaled) to `dlogits`.
template <typename S>
double SoftmaxCrossEntropy(const Matrix<S>& logits, const std::vector<int>& targets, double weight,
                           Matrix<S>& dlogits) {
  dlogits = Matrix<S>::Zero(logits.rows(), logits.cols());
  double loss = 0.0;
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const int t = targets[static_cast<std::size_t>(i)];
    if (t < 0) continue;
    const S m = logits.row(i).maxCoeff();
    auto e = (logits.row(i).array() - m).exp();
    const S z = e.sum();
    loss += -(static_cast<double>(logits(i, t) - m) - std::log(static_cast<double>(z)));
    dlogits.row(i) = (e / z).matrix() * static_cast<S>(weight);
    dlogits(i, t) -= static_cast<S>(weight);
  }
  return loss * weight;
}

}  // namespace prosody::nn

#endif  // PROSODY_NN_H_
