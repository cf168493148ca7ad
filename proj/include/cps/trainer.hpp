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

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cps/environment.hpp"
#include "cps/mcts.hpp"
#include "cps/net.hpp"

namespace cps {

struct TrainConfig {
  std::uint64_t total_episodes = 60000;
  int episodes_per_round = 30;
  /// Upper bound on worker threads; the effective count is also capped by
  /// hardware concurrency and the CPS_THREADS environment variable.
  int workers = 30;
  int warmup_simulations = 50;
  int standard_simulations = 100;
  int eval_simulations = 100;
  /// Episodes with 10 * index < total use the warmup budget (the first 10%).
  double warmup_fraction = 0.1;
  int epochs = 16;
  /// Mini-batches per epoch; 0 means ceil(samples added this round / batch).
  int batches_per_epoch = 0;
  int batch_size = 1024;
  std::size_t replay_capacity = 500000;
  /// Best-game buffer capacity in samples.
  std::size_t best_capacity = 1000;
  std::uint64_t replay_only_after = 300;
  std::uint64_t mix_after = 600;
  double best_game_ratio = 0.1;
  double value_coeff = 2.0;
  bool curriculum = false;
  double boost_fraction = 0.05;
  double boost_tau = 1.2;
  int eval_period = 10;
  double eval_dirichlet_alpha = 0.15;
  double eval_dirichlet_eps = 0.1;
  /// Optimizer warmup length; negative derives it from the episode warmup.
  std::int64_t lr_warmup_steps = -1;
  /// Stop once the best accuracy reaches this value; 0 disables.
  double target_accuracy = 0.0;
  /// Write a checkpoint every this many rounds; 0 disables.
  int checkpoint_period = 10;
  std::uint64_t seed = 0;
  std::uint64_t net_seed_offset = 0x9e3779b97f4a7c15ULL;

  SearchConfig search;
  NetConfig net;
  OptimizerConfig optimizer;

  void validate() const;
};

/// Maximum episode length for an episode index. Stages: 4e < total gives
/// ceil(T/4), 2e < total gives ceil(T/2), otherwise T.
std::size_t horizon_at(std::uint64_t episode, std::uint64_t total, std::size_t full_horizon, bool curriculum);

/// First episode index of each horizon expansion (two with curriculum, none without).
std::vector<std::uint64_t> expansion_episodes(std::uint64_t total, bool curriculum);

/// Start of the newly opened step segment when `episode` lies in a
/// post-expansion boost window: e_k <= episode and (episode - e_k) / total <
/// boost_fraction. Steps at or beyond the returned index use the boost temperature.
std::optional<std::size_t> boost_segment_start(std::uint64_t episode, std::uint64_t total,
                                               std::size_t full_horizon, bool curriculum,
                                               double boost_fraction);

/// Per-episode temperature with the curriculum boost applied.
double episode_temperature(std::size_t step, std::size_t horizon, std::optional<std::size_t> boost_start,
                           const TrainConfig& config);

/// Deterministic 64-bit stream seed from (seed, a, b).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

struct EpisodeRecord {
  std::vector<GateId> prefix;
  std::vector<std::array<float, kNumActions>> policies;  // one per step
  double reward = 0.0;
};

/// Replay ring (oldest evicted first) plus the best-game buffer, which admits
/// only episodes with raw reward > 0 and evicts the lowest-reward episode
/// first (oldest among equals) while over capacity.
class ReplayBuffers {
 public:
  ReplayBuffers(std::size_t replay_capacity, std::size_t best_capacity);

  void add_replay(TrainingSample sample);
  /// Returns whether the episode was retained.
  bool offer_best(double raw_reward, std::vector<TrainingSample> samples);

  std::size_t replay_size() const { return replay_.size(); }
  std::size_t best_size() const { return best_samples_; }
  std::size_t best_episodes() const { return best_.size(); }
  const TrainingSample& replay_at(std::size_t i) const { return replay_[i]; }
  /// i-th best-game sample in buffer order.
  const TrainingSample& best_at(std::size_t i) const;
  /// Raw rewards of the retained best-game episodes.
  std::vector<double> best_rewards() const;

  struct BestEpisode {
    double reward = 0.0;
    std::uint64_t order = 0;
    std::vector<TrainingSample> samples;
  };
  const std::deque<TrainingSample>& replay() const { return replay_; }
  const std::vector<BestEpisode>& best() const { return best_; }
  void restore(std::deque<TrainingSample> replay, std::vector<BestEpisode> best, std::uint64_t next_order);
  std::uint64_t next_order() const { return next_order_; }

 private:
  std::size_t replay_capacity_;
  std::size_t best_capacity_;
  std::deque<TrainingSample> replay_;
  std::vector<BestEpisode> best_;
  std::size_t best_samples_ = 0;
  std::uint64_t next_order_ = 0;
};

struct RoundReport {
  std::uint64_t round = 0;     // 1-based
  std::uint64_t episodes = 0;  // cumulative
  double best_reward = 0.0;    // global best raw reward so far
  double mean_reward = 0.0;    // this round's episodes
  double loss_policy = 0.0;    // mean over this round's updates; NaN without updates
  double loss_value = 0.0;
  std::uint64_t optimizer_steps = 0;  // this round
  std::uint64_t evaluations = 0;      // distinct circuit evaluations, cumulative
  double accuracy = 0.0;              // best energy over E_opt
  bool aborted = false;               // non-finite loss; parameters rolled back
  std::optional<double> eval_reward;  // greedy evaluation this round, if any
};

struct EvalResult {
  std::vector<GateId> prefix;
  double reward = 0.0;
  double energy = 0.0;
  double accuracy = 0.0;
};

struct BudgetReport {
  std::uint64_t evaluations = 0;
  std::uint64_t evaluations_without_eval = 0;
  std::uint64_t rounds = 0;
  std::uint64_t episodes = 0;
};

/// Self-play training loop for one (skeleton, Hamiltonian) task.
class Trainer {
 public:
  /// `ground_energy` is the exact minimum energy used for accuracy; it must be nonzero.
  Trainer(TrainConfig config, std::shared_ptr<const CircuitSkeleton> skeleton,
          std::shared_ptr<const Hamiltonian> hamiltonian, double ground_energy);

  bool finished() const;
  RoundReport run_round();
  /// Runs rounds until finished or the target accuracy is reached.
  std::vector<RoundReport> run(const std::function<void(const RoundReport&)>& on_round = {});

  /// Greedy policy episode over the full horizon.
  EvalResult evaluate_policy();

  BudgetReport budget() const;
  double accuracy_of(double reward) const;
  double best_accuracy() const;
  std::vector<GateId> best_prefix() const { return env_.best_prefix(); }

  const TrainConfig& config() const { return config_; }
  const NetParams<float>& params() const { return params_; }
  const AdamW& optimizer() const { return optimizer_; }
  const RewardNormalizer& normalizer() const { return normalizer_; }
  const ReplayBuffers& buffers() const { return buffers_; }
  Environment& environment() { return env_; }
  const std::vector<RoundReport>& history() const { return history_; }
  const std::vector<std::pair<std::uint64_t, EvalResult>>& evaluations() const { return evals_; }
  int worker_threads() const { return threads_; }
  double ground_energy() const { return ground_energy_; }

  /// Writes the full trainer state (network, optimizer, normalizer, buffers,
  /// evaluation cache, counters) to one checkpoint file.
  void save(const std::string& path) const;
  /// Replaces this trainer's state with a checkpoint written by save().
  void load(const std::string& path);

 private:
  EpisodeRecord play_episode(const InferenceNet& net, std::uint64_t episode_index, std::uint64_t slot);
  std::pair<LossValue, std::uint64_t> train_round(std::size_t new_samples, bool& aborted);

  TrainConfig config_;
  Environment env_;
  double ground_energy_;
  NetParams<float> params_;
  AdamW optimizer_;
  RewardNormalizer normalizer_;
  ReplayBuffers buffers_;
  Mat<float> ham_features_;
  std::uint64_t rounds_ = 0;
  std::uint64_t episodes_ = 0;
  std::vector<RoundReport> history_;
  std::vector<std::pair<std::uint64_t, EvalResult>> evals_;
  int threads_ = 1;
};

/// Worker threads: min(requested, hardware concurrency), overridden by CPS_THREADS.
int resolve_thread_count(int requested);

}  // namespace cps
