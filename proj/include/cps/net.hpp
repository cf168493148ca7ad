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

#pragma once

// Transformer policy/value network over gate-prefix token sequences, with a
// hand-written reverse pass and an AdamW optimizer.
//
// Input tokens are START followed by the prefix gate ids, truncated to the last
// `context_len` tokens. Each token is the concatenation of a learned state
// embedding and a sinusoidal position code (window-relative). A pooled encoding
// of the Hamiltonian, scaled by a learnable scalar, is added to every token.
// Pre-LN encoder blocks (multi-head self-attention, GELU feed-forward) are
// followed by a final LayerNorm; the last position feeds a softmax policy head
// and, concatenated with the last token's state embedding, a tanh value head.

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cps/clifford.hpp"
#include "cps/hamiltonian.hpp"

namespace cps {

inline constexpr int kNumActions = kNumCliffords;
inline constexpr int kNumTokens = kNumActions + 2;
inline constexpr int kStartToken = kNumActions;
inline constexpr int kPadToken = kNumActions + 1;

struct NetConfig {
  int layers = 2;
  int heads = 4;
  int model_dim = 128;
  int ff_dim = 256;
  int state_embed_dim = 32;
  int pos_embed_dim = 96;
  int context_len = 64;
  /// Successive layer output widths; the last must be kNumActions.
  std::vector<int> policy_head{128, 128, kNumActions};
  /// Successive layer output widths; the last must be 1.
  std::vector<int> value_head{256, 128, 64, 1};
  /// Successive layer output widths; the last must be model_dim.
  std::vector<int> ham_mlp{256, 128};
  /// Qubits covered by the per-term one-hot Hamiltonian features.
  int max_ham_qubits = 32;

  /// Throws std::invalid_argument when the widths are inconsistent.
  void validate() const;
  int head_dim() const { return model_dim / heads; }
  int ham_feature_dim() const { return 4 * max_ham_qubits + 1; }

  /// Small configuration for finite-difference gradient checks.
  static NetConfig reduced();

  bool operator==(const NetConfig&) const = default;
};

template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename S>
struct Linear {
  Mat<S> w;  // in x out
  Mat<S> b;  // 1 x out
};

template <typename S>
struct LayerNormParams {
  Mat<S> gamma;  // 1 x d
  Mat<S> beta;
};

template <typename S>
struct EncoderLayerParams {
  LayerNormParams<S> ln1;
  Linear<S> wq, wk, wv, wo;
  LayerNormParams<S> ln2;
  Linear<S> ff1, ff2;
};

/// Every learnable array. Also used as the gradient container.
template <typename S>
struct NetParams {
  NetConfig config;
  Mat<S> token_embed;  // kNumTokens x state_embed_dim
  std::vector<Linear<S>> ham_mlp;
  Mat<S> ham_scale;  // 1 x 1
  std::vector<EncoderLayerParams<S>> layers;
  LayerNormParams<S> ln_final;
  std::vector<Linear<S>> policy_head;
  std::vector<Linear<S>> value_head;

  /// PyTorch-style initialization: U(-1/sqrt(fan_in), 1/sqrt(fan_in)) for
  /// linear layers, N(0, 1) token embeddings, unit LayerNorm scales.
  static NetParams init(const NetConfig& config, std::uint64_t seed);
  /// Same shapes as `config`, all zeros.
  static NetParams zeros(const NetConfig& config);

  /// Visits every tensor in a fixed order with a stable name.
  void for_each(const std::function<void(const std::string&, Mat<S>&)>& fn);
  void for_each(const std::function<void(const std::string&, const Mat<S>&)>& fn) const;

  std::size_t num_parameters() const;
  void set_zero();
  bool all_finite() const;

  template <typename T>
  NetParams<T> cast() const;
};

/// One replay record: prefix, MCTS visit distribution, normalized return.
struct TrainingSample {
  std::vector<GateId> prefix;
  std::array<float, kNumActions> policy_target{};
  float value_target = 0.0f;
};

struct NetOutput {
  std::array<float, kNumActions> policy{};
  float value = 0.0f;
};

/// Tokens (START then gate ids) truncated to the last context_len entries.
std::vector<int> prefix_tokens(std::span<const GateId> prefix, int context_len);

/// Per-term features: per-qubit one-hot over (I, X, Y, Z) for the first
/// max_ham_qubits qubits, then the coefficient divided by the largest
/// |coefficient|. Identity terms are skipped. Returns a (terms x feature) matrix.
template <typename S>
Mat<S> hamiltonian_features(const Hamiltonian& h, const NetConfig& config);

/// Pooled Hamiltonian vector before scaling: mean over terms of the MLP output.
template <typename S>
Mat<S> encode_hamiltonian(const NetParams<S>& params, const Mat<S>& features);

/// Forward pass for one prefix. `ham_vector` is encode_hamiltonian's output.
template <typename S>
NetOutput forward(const NetParams<S>& params, std::span<const GateId> prefix,
                  const Mat<S>& ham_vector);

struct LossValue {
  double total = 0.0;
  double policy = 0.0;
  double value = 0.0;
};

/// L = L_p + c_v L_v over a batch sharing one Hamiltonian, with L_p the mean
/// cross-entropy against the targets (log floor 1e-10) and L_v the mean Huber
/// loss (threshold 1). Accumulates dL/dparams into `grads` when non-null.
/// Throws std::invalid_argument when a policy target does not sum to 1.
template <typename S>
LossValue loss_and_gradient(const NetParams<S>& params, std::span<const TrainingSample* const> batch,
                            const Mat<S>& ham_features, double value_coeff, NetParams<S>* grads);

/// Read-only evaluator for tree search: float parameters plus the cached
/// Hamiltonian vector. Safe to share between threads.
class InferenceNet {
 public:
  InferenceNet(NetParams<float> params, const Hamiltonian& h);
  NetOutput evaluate(std::span<const GateId> prefix) const;
  const NetParams<float>& params() const { return params_; }

 private:
  NetParams<float> params_;
  Mat<float> ham_vector_;
};

// ---------------------------------------------------------------------------

struct OptimizerConfig {
  double peak_lr = 1e-4;
  double weight_decay = 1e-6;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double clip_norm = 1.0;
  /// Linear ramp length in optimizer steps; 0 disables warmup.
  std::int64_t warmup_steps = 0;
};

struct StepInfo {
  double lr = 0.0;
  double grad_norm = 0.0;  // before clipping
  double clip_scale = 1.0;
};

/// AdamW (decoupled weight decay) with a linear warmup and global-norm clipping.
class AdamW {
 public:
  AdamW(const NetConfig& config, OptimizerConfig opt);

  /// lr for the k-th update (k >= 1): peak * min(1, k / warmup); lr(0) = 0.
  double learning_rate(std::int64_t step) const;

  /// Clips `grads` in place then updates `params`. Throws TrainingError on a
  /// non-finite gradient, leaving params untouched.
  StepInfo step(NetParams<float>& params, NetParams<float>& grads);

  std::int64_t steps_taken() const { return step_; }
  const OptimizerConfig& config() const { return opt_; }
  void set_config(const OptimizerConfig& opt) { opt_ = opt; }
  NetParams<float>& first_moment() { return m_; }
  NetParams<float>& second_moment() { return v_; }
  const NetParams<float>& first_moment() const { return m_; }
  const NetParams<float>& second_moment() const { return v_; }
  void set_steps_taken(std::int64_t s) { step_ = s; }

 private:
  OptimizerConfig opt_;
  NetParams<float> m_;
  NetParams<float> v_;
  std::int64_t step_ = 0;
};

/// Global L2 norm over every tensor.
double global_norm(const NetParams<float>& grads);
/// Multiplies every tensor by `factor`.
void scale_in_place(NetParams<float>& grads, double factor);

// ---------------------------------------------------------------------------
// Checkpoints: 8-byte magic, u32 header length, JSON header (config, tensor
// shapes, optimizer state, caller metadata), then little-endian float32
// parameter arrays followed by the two optimizer moment arrays.

void save_checkpoint(const std::string& path, const NetParams<float>& params, const AdamW* optimizer,
                     const std::string& extra_json);

struct LoadedCheckpoint {
  NetParams<float> params;
  NetParams<float> first_moment;
  NetParams<float> second_moment;
  bool has_moments = false;
  std::int64_t step = 0;
  OptimizerConfig optimizer;
  std::string extra_json;
};

/// Throws std::runtime_error on a malformed or truncated file.
LoadedCheckpoint load_checkpoint(const std::string& path);

}  // namespace cps
