// Copyright 2026 The cpsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cps/net.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>

#include "cps/errors.hpp"

namespace cps {

using Eigen::Index;

void NetConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("invalid network config: ") + what);
  };
  require(layers >= 1, "layers must be >= 1");
  require(heads >= 1 && model_dim % heads == 0, "model_dim must be divisible by heads");
  require(ff_dim >= 1, "ff_dim must be >= 1");
  require(state_embed_dim >= 1 && pos_embed_dim >= 2 && pos_embed_dim % 2 == 0,
          "embedding widths must be positive and the position width even");
  require(state_embed_dim + pos_embed_dim == model_dim, "state + position widths must equal model_dim");
  require(context_len >= 1, "context_len must be >= 1");
  require(!policy_head.empty() && policy_head.back() == kNumActions, "policy head must end in 24 logits");
  require(!value_head.empty() && value_head.back() == 1, "value head must end in one output");
  require(!ham_mlp.empty() && ham_mlp.back() == model_dim, "Hamiltonian MLP must end in model_dim");
  require(max_ham_qubits >= 1, "max_ham_qubits must be >= 1");
  for (const auto* widths : {&policy_head, &value_head, &ham_mlp}) {
    for (int w : *widths) require(w >= 1, "layer widths must be positive");
  }
}

NetConfig NetConfig::reduced() {
  NetConfig c;
  c.layers = 1;
  c.heads = 2;
  c.model_dim = 16;
  c.ff_dim = 32;
  c.state_embed_dim = 4;
  c.pos_embed_dim = 12;
  c.context_len = 6;
  c.policy_head = {8, kNumActions};
  c.value_head = {8, 4, 1};
  c.ham_mlp = {8, 16};
  c.max_ham_qubits = 4;
  return c;
}

// ---------------------------------------------------------------------------
// Parameter containers

namespace {

template <typename S>
Linear<S> make_linear(Index in, Index out) {
  return {Mat<S>::Zero(in, out), Mat<S>::Zero(1, out)};
}

template <typename S>
LayerNormParams<S> make_ln(Index d) {
  return {Mat<S>::Ones(1, d), Mat<S>::Zero(1, d)};
}

template <typename S>
std::vector<Linear<S>> make_mlp(Index in, const std::vector<int>& widths) {
  std::vector<Linear<S>> out;
  for (int w : widths) {
    out.push_back(make_linear<S>(in, w));
    in = w;
  }
  return out;
}

template <typename S, typename Fn>
void visit_all(NetParams<S>& p, Fn&& fn) {
  fn("token_embed", p.token_embed);
  auto mlp = [&](const std::string& prefix, std::vector<Linear<S>>& layers) {
    for (std::size_t i = 0; i < layers.size(); ++i) {
      fn(prefix + "." + std::to_string(i) + ".w", layers[i].w);
      fn(prefix + "." + std::to_string(i) + ".b", layers[i].b);
    }
  };
  mlp("ham_mlp", p.ham_mlp);
  fn("ham_scale", p.ham_scale);
  for (std::size_t l = 0; l < p.layers.size(); ++l) {
    auto& L = p.layers[l];
    const std::string pre = "layer" + std::to_string(l) + ".";
    fn(pre + "ln1.gamma", L.ln1.gamma);
    fn(pre + "ln1.beta", L.ln1.beta);
    fn(pre + "wq.w", L.wq.w);
    fn(pre + "wq.b", L.wq.b);
    fn(pre + "wk.w", L.wk.w);
    fn(pre + "wk.b", L.wk.b);
    fn(pre + "wv.w", L.wv.w);
    fn(pre + "wv.b", L.wv.b);
    fn(pre + "wo.w", L.wo.w);
    fn(pre + "wo.b", L.wo.b);
    fn(pre + "ln2.gamma", L.ln2.gamma);
    fn(pre + "ln2.beta", L.ln2.beta);
    fn(pre + "ff1.w", L.ff1.w);
    fn(pre + "ff1.b", L.ff1.b);
    fn(pre + "ff2.w", L.ff2.w);
    fn(pre + "ff2.b", L.ff2.b);
  }
  fn("ln_final.gamma", p.ln_final.gamma);
  fn("ln_final.beta", p.ln_final.beta);
  mlp("policy_head", p.policy_head);
  mlp("value_head", p.value_head);
}

}  // namespace

template <typename S>
NetParams<S> NetParams<S>::zeros(const NetConfig& config) {
  config.validate();
  NetParams<S> p;
  p.config = config;
  const Index d = config.model_dim;
  p.token_embed = Mat<S>::Zero(kNumTokens, config.state_embed_dim);
  p.ham_mlp = make_mlp<S>(config.ham_feature_dim(), config.ham_mlp);
  p.ham_scale = Mat<S>::Zero(1, 1);
  for (int l = 0; l < config.layers; ++l) {
    EncoderLayerParams<S> L;
    L.ln1 = make_ln<S>(d);
    L.wq = make_linear<S>(d, d);
    L.wk = make_linear<S>(d, d);
    L.wv = make_linear<S>(d, d);
    L.wo = make_linear<S>(d, d);
    L.ln2 = make_ln<S>(d);
    L.ff1 = make_linear<S>(d, config.ff_dim);
    L.ff2 = make_linear<S>(config.ff_dim, d);
    p.layers.push_back(std::move(L));
  }
  p.ln_final = make_ln<S>(d);
  p.policy_head = make_mlp<S>(d, config.policy_head);
  p.value_head = make_mlp<S>(d + config.state_embed_dim, config.value_head);
  p.set_zero();
  return p;
}

template <typename S>
NetParams<S> NetParams<S>::init(const NetConfig& config, std::uint64_t seed) {
  NetParams<S> p = zeros(config);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Index i = 0; i < p.token_embed.size(); ++i) p.token_embed.data()[i] = static_cast<S>(normal(rng));
  auto init_linear = [&](Linear<S>& L) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(L.w.rows()));
    std::uniform_real_distribution<double> u(-bound, bound);
    for (Index i = 0; i < L.w.size(); ++i) L.w.data()[i] = static_cast<S>(u(rng));
    for (Index i = 0; i < L.b.size(); ++i) L.b.data()[i] = static_cast<S>(u(rng));
  };
  for (auto& L : p.ham_mlp) init_linear(L);
  p.ham_scale(0, 0) = S(1);
  for (auto& L : p.layers) {
    L.ln1.gamma.setOnes();
    L.ln2.gamma.setOnes();
    for (Linear<S>* lin : {&L.wq, &L.wk, &L.wv, &L.wo, &L.ff1, &L.ff2}) init_linear(*lin);
  }
  p.ln_final.gamma.setOnes();
  for (auto& L : p.policy_head) init_linear(L);
  for (auto& L : p.value_head) init_linear(L);
  return p;
}

template <typename S>
void NetParams<S>::for_each(const std::function<void(const std::string&, Mat<S>&)>& fn) {
  visit_all(*this, fn);
}

template <typename S>
void NetParams<S>::for_each(const std::function<void(const std::string&, const Mat<S>&)>& fn) const {
  visit_all(const_cast<NetParams<S>&>(*this), [&](const std::string& name, Mat<S>& m) { fn(name, m); });
}

template <typename S>
std::size_t NetParams<S>::num_parameters() const {
  std::size_t total = 0;
  for_each([&](const std::string&, const Mat<S>& m) { total += static_cast<std::size_t>(m.size()); });
  return total;
}

template <typename S>
void NetParams<S>::set_zero() {
  for_each([](const std::string&, Mat<S>& m) { m.setZero(); });
}

template <typename S>
bool NetParams<S>::all_finite() const {
  bool ok = true;
  for_each([&](const std::string&, const Mat<S>& m) { ok = ok && m.allFinite(); });
  return ok;
}

template <typename S>
template <typename T>
NetParams<T> NetParams<S>::cast() const {
  NetParams<T> out = NetParams<T>::zeros(config);
  std::vector<const Mat<S>*> src;
  for_each([&](const std::string&, const Mat<S>& m) { src.push_back(&m); });
  std::size_t i = 0;
  out.for_each([&](const std::string&, Mat<T>& m) { m = src[i++]->template cast<T>(); });
  return out;
}

template struct NetParams<float>;
template struct NetParams<double>;
template NetParams<double> NetParams<float>::cast<double>() const;
template NetParams<float> NetParams<double>::cast<float>() const;
template NetParams<float> NetParams<float>::cast<float>() const;
template NetParams<double> NetParams<double>::cast<double>() const;

// ---------------------------------------------------------------------------
// Forward and reverse passes

std::vector<int> prefix_tokens(std::span<const GateId> prefix, int context_len) {
  if (context_len < 1) throw std::invalid_argument("context_len must be >= 1");
  std::vector<int> tokens;
  tokens.reserve(prefix.size() + 1);
  tokens.push_back(kStartToken);
  for (GateId g : prefix) {
    if (g >= kNumActions) throw std::invalid_argument("invalid Clifford gate id in prefix");
    tokens.push_back(g);
  }
  const auto keep = static_cast<std::size_t>(context_len);
  if (tokens.size() > keep) tokens.erase(tokens.begin(), tokens.end() - static_cast<std::ptrdiff_t>(keep));
  return tokens;
}

template <typename S>
Mat<S> hamiltonian_features(const Hamiltonian& h, const NetConfig& config) {
  std::vector<const PauliTerm*> terms;
  for (const auto& t : h.terms()) {
    if (!t.pauli.is_identity()) terms.push_back(&t);
  }
  double max_abs = 0.0;
  for (const auto* t : terms) max_abs = std::max(max_abs, std::abs(t->coeff));
  const int width = config.ham_feature_dim();
  Mat<S> f = Mat<S>::Zero(static_cast<Index>(terms.size()), width);
  const std::size_t nq = std::min<std::size_t>(h.n_qubits(), static_cast<std::size_t>(config.max_ham_qubits));
  for (std::size_t r = 0; r < terms.size(); ++r) {
    const auto& p = terms[r]->pauli;
    for (std::size_t q = 0; q < nq; ++q) {
      const int code = p.x(q) ? (p.z(q) ? 2 : 1) : (p.z(q) ? 3 : 0);  // I, X, Y, Z
      f(static_cast<Index>(r), static_cast<Index>(4 * q + code)) = S(1);
    }
    f(static_cast<Index>(r), width - 1) = static_cast<S>(max_abs > 0 ? terms[r]->coeff / max_abs : 0.0);
  }
  return f;
}

template Mat<float> hamiltonian_features<float>(const Hamiltonian&, const NetConfig&);
template Mat<double> hamiltonian_features<double>(const Hamiltonian&, const NetConfig&);

namespace {

template <typename S>
S gelu(S x) {
  return S(0.5) * x * (S(1) + std::erf(x * S(M_SQRT1_2)));
}

template <typename S>
S gelu_grad(S x) {
  const S cdf = S(0.5) * (S(1) + std::erf(x * S(M_SQRT1_2)));
  const S pdf = std::exp(S(-0.5) * x * x) * S(0.3989422804014327);
  return cdf + x * pdf;
}

template <typename S>
const Mat<S>& positional_table(int len, int dim) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<Mat<S>>> tables;
  std::lock_guard lock(mu);
  auto& slot = tables[{len, dim}];
  if (!slot) {
    slot = std::make_unique<Mat<S>>(len, dim);
    for (int pos = 0; pos < len; ++pos) {
      for (int i = 0; i < dim / 2; ++i) {
        const double angle = pos / std::pow(10000.0, 2.0 * i / dim);
        (*slot)(pos, 2 * i) = static_cast<S>(std::sin(angle));
        (*slot)(pos, 2 * i + 1) = static_cast<S>(std::cos(angle));
      }
    }
  }
  return *slot;
}

template <typename S>
Mat<S> linear_forward(const Linear<S>& L, const Mat<S>& x) {
  Mat<S> y = x * L.w;
  y.rowwise() += L.b.row(0);
  return y;
}

/// Accumulates parameter gradients; returns dL/dx.
template <typename S>
Mat<S> linear_backward(const Linear<S>& L, const Mat<S>& x, const Mat<S>& dy, Linear<S>& g) {
  g.w.noalias() += x.transpose() * dy;
  g.b += dy.colwise().sum();
  return dy * L.w.transpose();
}

template <typename S>
struct LnCache {
  Mat<S> xhat;
  Eigen::Matrix<S, Eigen::Dynamic, 1> rstd;
};

template <typename S>
Mat<S> ln_forward(const LayerNormParams<S>& p, const Mat<S>& x, LnCache<S>& c) {
  constexpr double kEps = 1e-5;
  const Index rows = x.rows();
  c.xhat.resize(rows, x.cols());
  c.rstd.resize(rows);
  for (Index r = 0; r < rows; ++r) {
    const S mean = x.row(r).mean();
    const auto centered = (x.row(r).array() - mean).eval();
    const S var = centered.square().mean();
    c.rstd(r) = S(1) / std::sqrt(var + S(kEps));
    c.xhat.row(r) = (centered * c.rstd(r)).matrix();
  }
  Mat<S> y = (c.xhat.array().rowwise() * p.gamma.row(0).array()).matrix();
  y.rowwise() += p.beta.row(0);
  return y;
}

template <typename S>
Mat<S> ln_backward(const LayerNormParams<S>& p, const LnCache<S>& c, const Mat<S>& dy,
                   LayerNormParams<S>& g) {
  g.gamma += (dy.array() * c.xhat.array()).colwise().sum().matrix();
  g.beta += dy.colwise().sum();
  const Mat<S> dxhat = (dy.array().rowwise() * p.gamma.row(0).array()).matrix();
  Mat<S> dx(dy.rows(), dy.cols());
  for (Index r = 0; r < dy.rows(); ++r) {
    const S m1 = dxhat.row(r).mean();
    const S m2 = dxhat.row(r).cwiseProduct(c.xhat.row(r)).mean();
    dx.row(r) = c.rstd(r) * (dxhat.row(r).array() - m1 - c.xhat.row(r).array() * m2).matrix();
  }
  return dx;
}

template <typename S>
struct MlpCache {
  std::vector<Mat<S>> inputs;  // input to each layer
  std::vector<Mat<S>> pre;     // pre-activation of each hidden layer
};

template <typename S>
Mat<S> mlp_forward(const std::vector<Linear<S>>& layers, const Mat<S>& x, MlpCache<S>* c) {
  Mat<S> h = x;
  if (c) {
    // Caches are reused across samples.
    c->inputs.clear();
    c->pre.clear();
  }
  for (std::size_t k = 0; k < layers.size(); ++k) {
    if (c) c->inputs.push_back(h);
    Mat<S> z = linear_forward(layers[k], h);
    if (k + 1 < layers.size()) {
      h = z.unaryExpr([](S v) { return gelu(v); });
      if (c) c->pre.push_back(std::move(z));
    } else {
      h = std::move(z);
    }
  }
  return h;
}

template <typename S>
Mat<S> mlp_backward(const std::vector<Linear<S>>& layers, const MlpCache<S>& c, const Mat<S>& dy,
                    std::vector<Linear<S>>& g) {
  Mat<S> d = dy;
  for (std::size_t k = layers.size(); k-- > 0;) {
    if (k + 1 < layers.size()) d = d.cwiseProduct(c.pre[k].unaryExpr([](S v) { return gelu_grad(v); }));
    d = linear_backward(layers[k], c.inputs[k], d, g[k]);
  }
  return d;
}

template <typename S>
struct LayerCache {
  Index q_start = 0;
  Mat<S> x;  // layer input, T x d
  LnCache<S> ln1;
  Mat<S> a;  // ln1 output, T x d
  Mat<S> q, k, v;
  std::vector<Mat<S>> probs;  // per head, R x T
  Mat<S> o;                   // concatenated head outputs, R x d
  Mat<S> x1;                  // residual after attention, R x d
  LnCache<S> ln2;
  Mat<S> b;  // ln2 output
  Mat<S> u;  // feed-forward pre-activation
  Mat<S> gact;
};

/// Encoder block over input rows; only query rows q_start..T-1 are produced.
template <typename S>
Mat<S> layer_forward(const EncoderLayerParams<S>& p, const Mat<S>& x, Index q_start, int heads,
                     LayerCache<S>& c) {
  const Index T = x.rows();
  const Index R = T - q_start;
  const Index d = x.cols();
  const Index dh = d / heads;
  const S scale = S(1) / std::sqrt(static_cast<S>(dh));
  c.q_start = q_start;
  c.x = x;
  c.a = ln_forward(p.ln1, x, c.ln1);
  c.q = linear_forward(p.wq, Mat<S>(c.a.bottomRows(R)));
  c.k = linear_forward(p.wk, c.a);
  c.v = linear_forward(p.wv, c.a);
  c.o.resize(R, d);
  c.probs.resize(static_cast<std::size_t>(heads));
  for (int h = 0; h < heads; ++h) {
    Mat<S> s = (c.q.middleCols(h * dh, dh) * c.k.middleCols(h * dh, dh).transpose()) * scale;
    for (Index r = 0; r < R; ++r) {
      const S m = s.row(r).maxCoeff();
      s.row(r) = (s.row(r).array() - m).exp().matrix();
      s.row(r) /= s.row(r).sum();
    }
    c.o.middleCols(h * dh, dh).noalias() = s * c.v.middleCols(h * dh, dh);
    c.probs[static_cast<std::size_t>(h)] = std::move(s);
  }
  c.x1 = x.bottomRows(R) + linear_forward(p.wo, c.o);
  c.b = ln_forward(p.ln2, c.x1, c.ln2);
  c.u = linear_forward(p.ff1, c.b);
  c.gact = c.u.unaryExpr([](S v) { return gelu(v); });
  return c.x1 + linear_forward(p.ff2, c.gact);
}

/// dout is R x d; returns dL/dx (T x d).
template <typename S>
Mat<S> layer_backward(const EncoderLayerParams<S>& p, const LayerCache<S>& c, const Mat<S>& dout,
                      int heads, EncoderLayerParams<S>& g) {
  const Index T = c.x.rows();
  const Index R = T - c.q_start;
  const Index d = c.x.cols();
  const Index dh = d / heads;
  const S scale = S(1) / std::sqrt(static_cast<S>(dh));

  Mat<S> dgact = linear_backward(p.ff2, c.gact, dout, g.ff2);
  Mat<S> du = dgact.cwiseProduct(c.u.unaryExpr([](S v) { return gelu_grad(v); }));
  Mat<S> db = linear_backward(p.ff1, c.b, du, g.ff1);
  Mat<S> dx1 = dout + ln_backward(p.ln2, c.ln2, db, g.ln2);

  Mat<S> dx = Mat<S>::Zero(T, d);
  dx.bottomRows(R) += dx1;

  Mat<S> dO = linear_backward(p.wo, c.o, dx1, g.wo);
  Mat<S> dq(R, d);
  Mat<S> dk(T, d);
  Mat<S> dv(T, d);
  for (int h = 0; h < heads; ++h) {
    const Mat<S>& P = c.probs[static_cast<std::size_t>(h)];
    const Mat<S> dOh = dO.middleCols(h * dh, dh);
    Mat<S> dP = dOh * c.v.middleCols(h * dh, dh).transpose();
    dv.middleCols(h * dh, dh).noalias() = P.transpose() * dOh;
    const Eigen::Matrix<S, Eigen::Dynamic, 1> inner = dP.cwiseProduct(P).rowwise().sum();
    Mat<S> dS = P.cwiseProduct(dP.colwise() - inner) * scale;
    dq.middleCols(h * dh, dh).noalias() = dS * c.k.middleCols(h * dh, dh);
    dk.middleCols(h * dh, dh).noalias() = dS.transpose() * c.q.middleCols(h * dh, dh);
  }
  Mat<S> da = Mat<S>::Zero(T, d);
  da.bottomRows(R) += linear_backward(p.wq, Mat<S>(c.a.bottomRows(R)), dq, g.wq);
  da += linear_backward(p.wk, c.a, dk, g.wk);
  da += linear_backward(p.wv, c.a, dv, g.wv);
  dx += ln_backward(p.ln1, c.ln1, da, g.ln1);
  return dx;
}

template <typename S>
struct ForwardCache {
  std::vector<int> tokens;
  std::vector<LayerCache<S>> layers;
  LnCache<S> ln_final;
  Mat<S> h;  // final normalized hidden state, 1 x d
  MlpCache<S> policy;
  MlpCache<S> value;
  Mat<S> probs;  // 1 x kNumActions
  S value_out = S(0);
};

/// `ham_scaled` is the pooled Hamiltonian vector times the learnable scale.
template <typename S>
void run_forward(const NetParams<S>& p, const std::vector<int>& tokens, const Mat<S>& ham_scaled,
                 ForwardCache<S>& c) {
  const NetConfig& cfg = p.config;
  const Index T = static_cast<Index>(tokens.size());
  const Index se = cfg.state_embed_dim;
  const Mat<S>& pe = positional_table<S>(cfg.context_len, cfg.pos_embed_dim);
  Mat<S> x(T, cfg.model_dim);
  for (Index j = 0; j < T; ++j) {
    x.row(j).head(se) = p.token_embed.row(tokens[static_cast<std::size_t>(j)]);
    x.row(j).tail(cfg.pos_embed_dim) = pe.row(j);
  }
  x.rowwise() += ham_scaled.row(0);

  c.tokens = tokens;
  c.layers.resize(p.layers.size());
  for (std::size_t l = 0; l < p.layers.size(); ++l) {
    const Index q_start = (l + 1 == p.layers.size()) ? T - 1 : 0;
    x = layer_forward(p.layers[l], x, q_start, cfg.heads, c.layers[l]);
  }
  c.h = ln_forward(p.ln_final, x, c.ln_final);

  Mat<S> logits = mlp_forward(p.policy_head, c.h, &c.policy);
  const S m = logits.maxCoeff();
  c.probs = (logits.array() - m).exp().matrix();
  c.probs /= c.probs.sum();

  Mat<S> vin(1, cfg.model_dim + se);
  vin.leftCols(cfg.model_dim) = c.h;
  vin.rightCols(se) = p.token_embed.row(tokens.back());
  const Mat<S> vout = mlp_forward(p.value_head, vin, &c.value);
  c.value_out = std::tanh(vout(0, 0));
}

/// Accumulates gradients into g and the gradient w.r.t. ham_scaled into dham.
template <typename S>
void run_backward(const NetParams<S>& p, const ForwardCache<S>& c, const Mat<S>& dlogits, S dvout,
                  NetParams<S>& g, Mat<S>& dham) {
  const NetConfig& cfg = p.config;
  const Index se = cfg.state_embed_dim;
  Mat<S> dh = mlp_backward(p.policy_head, c.policy, dlogits, g.policy_head);
  Mat<S> dvo(1, 1);
  dvo(0, 0) = dvout;
  const Mat<S> dvin = mlp_backward(p.value_head, c.value, dvo, g.value_head);
  dh += dvin.leftCols(cfg.model_dim);
  g.token_embed.row(c.tokens.back()) += dvin.rightCols(se);

  Mat<S> dx = ln_backward(p.ln_final, c.ln_final, dh, g.ln_final);
  for (std::size_t l = p.layers.size(); l-- > 0;) {
    dx = layer_backward(p.layers[l], c.layers[l], dx, cfg.heads, g.layers[l]);
  }
  for (Index j = 0; j < dx.rows(); ++j) {
    g.token_embed.row(c.tokens[static_cast<std::size_t>(j)]) += dx.row(j).head(se);
  }
  dham += dx.colwise().sum();
}

template <typename S>
Mat<S> pooled(const NetParams<S>& p, const Mat<S>& features, MlpCache<S>* cache) {
  if (features.cols() != p.config.ham_feature_dim()) {
    throw std::invalid_argument("Hamiltonian feature width does not match the network config");
  }
  if (features.rows() == 0) return Mat<S>::Zero(1, p.config.model_dim);
  return mlp_forward(p.ham_mlp, features, cache).colwise().mean();
}

}  // namespace

template <typename S>
Mat<S> encode_hamiltonian(const NetParams<S>& params, const Mat<S>& features) {
  return pooled<S>(params, features, nullptr);
}

template <typename S>
NetOutput forward(const NetParams<S>& params, std::span<const GateId> prefix, const Mat<S>& ham_vector) {
  ForwardCache<S> cache;
  const Mat<S> scaled = ham_vector * params.ham_scale(0, 0);
  run_forward(params, prefix_tokens(prefix, params.config.context_len), scaled, cache);
  NetOutput out;
  for (int a = 0; a < kNumActions; ++a) out.policy[static_cast<std::size_t>(a)] = static_cast<float>(cache.probs(0, a));
  out.value = static_cast<float>(cache.value_out);
  return out;
}

template <typename S>
LossValue loss_and_gradient(const NetParams<S>& params, std::span<const TrainingSample* const> batch,
                            const Mat<S>& ham_features, double value_coeff, NetParams<S>* grads) {
  if (batch.empty()) throw std::invalid_argument("loss needs a non-empty batch");
  for (const auto* s : batch) {
    double sum = 0.0;
    for (float v : s->policy_target) {
      if (!(v >= 0.0f)) throw std::invalid_argument("policy target has a negative or NaN entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-4) throw std::invalid_argument("policy target does not sum to 1");
  }
  MlpCache<S> ham_cache;
  const Mat<S> pool = pooled<S>(params, ham_features, grads ? &ham_cache : nullptr);
  const S scale = params.ham_scale(0, 0);
  const Mat<S> scaled = pool * scale;
  Mat<S> dham = Mat<S>::Zero(1, params.config.model_dim);
  const S inv_b = S(1) / static_cast<S>(batch.size());

  double lp_sum = 0.0;
  double lv_sum = 0.0;
  ForwardCache<S> cache;
  Mat<S> dlogits(1, kNumActions);
  for (const auto* s : batch) {
    run_forward(params, prefix_tokens(s->prefix, params.config.context_len), scaled, cache);
    double lp = 0.0;
    S dot = S(0);
    Mat<S> dprob(1, kNumActions);
    for (int a = 0; a < kNumActions; ++a) {
      const S pi = static_cast<S>(s->policy_target[static_cast<std::size_t>(a)]);
      const S pa = cache.probs(0, a);
      lp -= static_cast<double>(pi) * std::log(static_cast<double>(pa) + 1e-10);
      dprob(0, a) = -pi / (pa + S(1e-10)) * inv_b;
      dot += pa * dprob(0, a);
    }
    const S diff = cache.value_out - static_cast<S>(s->value_target);
    const double ad = std::abs(static_cast<double>(diff));
    lp_sum += lp;
    lv_sum += ad <= 1.0 ? 0.5 * ad * ad : ad - 0.5;
    if (grads) {
      for (int a = 0; a < kNumActions; ++a) dlogits(0, a) = cache.probs(0, a) * (dprob(0, a) - dot);
      const S dvalue = static_cast<S>(value_coeff) * std::clamp(diff, S(-1), S(1)) * inv_b;
      const S dvout = dvalue * (S(1) - cache.value_out * cache.value_out);
      run_backward(params, cache, dlogits, dvout, *grads, dham);
    }
  }
  if (grads) {
    grads->ham_scale(0, 0) += dham.cwiseProduct(pool).sum();
    if (ham_features.rows() > 0) {
      const Mat<S> dz = Mat<S>::Ones(ham_features.rows(), 1) * (dham * scale) /
                        static_cast<S>(ham_features.rows());
      mlp_backward(params.ham_mlp, ham_cache, dz, grads->ham_mlp);
    }
  }
  LossValue out;
  out.policy = lp_sum / static_cast<double>(batch.size());
  out.value = lv_sum / static_cast<double>(batch.size());
  out.total = out.policy + value_coeff * out.value;
  return out;
}

template Mat<float> encode_hamiltonian<float>(const NetParams<float>&, const Mat<float>&);
template Mat<double> encode_hamiltonian<double>(const NetParams<double>&, const Mat<double>&);
template NetOutput forward<float>(const NetParams<float>&, std::span<const GateId>, const Mat<float>&);
template NetOutput forward<double>(const NetParams<double>&, std::span<const GateId>, const Mat<double>&);
template LossValue loss_and_gradient<float>(const NetParams<float>&, std::span<const TrainingSample* const>,
                                            const Mat<float>&, double, NetParams<float>*);
template LossValue loss_and_gradient<double>(const NetParams<double>&, std::span<const TrainingSample* const>,
                                             const Mat<double>&, double, NetParams<double>*);

InferenceNet::InferenceNet(NetParams<float> params, const Hamiltonian& h) : params_(std::move(params)) {
  ham_vector_ = encode_hamiltonian(params_, hamiltonian_features<float>(h, params_.config));
}

NetOutput InferenceNet::evaluate(std::span<const GateId> prefix) const {
  return forward(params_, prefix, ham_vector_);
}

// ---------------------------------------------------------------------------
// Optimizer

double global_norm(const NetParams<float>& grads) {
  double sq = 0.0;
  grads.for_each([&](const std::string&, const Mat<float>& m) { sq += m.cast<double>().squaredNorm(); });
  return std::sqrt(sq);
}

void scale_in_place(NetParams<float>& grads, double factor) {
  const auto f = static_cast<float>(factor);
  grads.for_each([&](const std::string&, Mat<float>& m) { m *= f; });
}

AdamW::AdamW(const NetConfig& config, OptimizerConfig opt)
    : opt_(opt), m_(NetParams<float>::zeros(config)), v_(NetParams<float>::zeros(config)) {
  if (!(opt_.peak_lr >= 0) || !(opt_.clip_norm > 0) || opt_.warmup_steps < 0) {
    throw std::invalid_argument("invalid optimizer config");
  }
}

double AdamW::learning_rate(std::int64_t step) const {
  if (step <= 0) return 0.0;
  if (opt_.warmup_steps <= 0) return opt_.peak_lr;
  return opt_.peak_lr * std::min(1.0, static_cast<double>(step) / static_cast<double>(opt_.warmup_steps));
}

StepInfo AdamW::step(NetParams<float>& params, NetParams<float>& grads) {
  StepInfo info;
  info.grad_norm = global_norm(grads);
  if (!std::isfinite(info.grad_norm)) throw TrainingError("non-finite gradient norm");
  if (info.grad_norm > opt_.clip_norm) {
    info.clip_scale = opt_.clip_norm / info.grad_norm;
    scale_in_place(grads, info.clip_scale);
  }
  ++step_;
  info.lr = learning_rate(step_);
  const double bc1 = 1.0 - std::pow(opt_.beta1, static_cast<double>(step_));
  const double bc2 = 1.0 - std::pow(opt_.beta2, static_cast<double>(step_));
  const auto b1 = static_cast<float>(opt_.beta1);
  const auto b2 = static_cast<float>(opt_.beta2);
  const auto decay = static_cast<float>(1.0 - info.lr * opt_.weight_decay);
  const auto step_size = static_cast<float>(info.lr / bc1);
  const auto inv_sqrt_bc2 = static_cast<float>(1.0 / std::sqrt(bc2));
  const auto eps = static_cast<float>(opt_.eps);

  std::vector<Mat<float>*> ps, gs, ms, vs;
  params.for_each([&](const std::string&, Mat<float>& m) { ps.push_back(&m); });
  grads.for_each([&](const std::string&, Mat<float>& m) { gs.push_back(&m); });
  m_.for_each([&](const std::string&, Mat<float>& m) { ms.push_back(&m); });
  v_.for_each([&](const std::string&, Mat<float>& m) { vs.push_back(&m); });
  if (ps.size() != gs.size() || ps.size() != ms.size()) throw std::invalid_argument("parameter shape mismatch");
  for (std::size_t i = 0; i < ps.size(); ++i) {
    auto p = ps[i]->array();
    auto g = gs[i]->array();
    auto m = ms[i]->array();
    auto v = vs[i]->array();
    if (p.size() != g.size()) throw std::invalid_argument("parameter shape mismatch");
    p *= decay;
    m = b1 * m + (1.0f - b1) * g;
    v = b2 * v + (1.0f - b2) * g.square();
    p -= step_size * m / (v.sqrt() * inv_sqrt_bc2 + eps);
  }
  return info;
}

}  // namespace cps
