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

#include "cps/config_json.hpp"

#include <set>
#include <stdexcept>
#include <string>

namespace cps {

using nlohmann::json;

namespace {

/// Reads keys into fields; throws std::invalid_argument on unknown keys.
class Reader {
 public:
  Reader(const json& j, const char* what) : j_(j), what_(what) {
    if (!j_.is_object()) throw std::invalid_argument(std::string(what_) + " config must be a JSON object");
  }
  template <typename T>
  Reader& field(const char* key, T& out) {
    known_.insert(key);
    if (auto it = j_.find(key); it != j_.end()) {
      try {
        out = it->template get<T>();
      } catch (const json::exception& e) {
        throw std::invalid_argument(std::string(what_) + "." + key + ": " + e.what());
      }
    }
    return *this;
  }
  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!known_.count(k)) throw std::invalid_argument(std::string("unknown ") + what_ + " config key: " + k);
    }
  }

 private:
  const json& j_;
  const char* what_;
  std::set<std::string> known_;
};

}  // namespace

void to_json(json& j, const NetConfig& c) {
  j = json{{"layers", c.layers},
           {"heads", c.heads},
           {"model_dim", c.model_dim},
           {"ff_dim", c.ff_dim},
           {"state_embed_dim", c.state_embed_dim},
           {"pos_embed_dim", c.pos_embed_dim},
           {"context_len", c.context_len},
           {"policy_head", c.policy_head},
           {"value_head", c.value_head},
           {"ham_mlp", c.ham_mlp},
           {"max_ham_qubits", c.max_ham_qubits}};
}

void from_json(const json& j, NetConfig& c) {
  Reader(j, "net")
      .field("layers", c.layers)
      .field("heads", c.heads)
      .field("model_dim", c.model_dim)
      .field("ff_dim", c.ff_dim)
      .field("state_embed_dim", c.state_embed_dim)
      .field("pos_embed_dim", c.pos_embed_dim)
      .field("context_len", c.context_len)
      .field("policy_head", c.policy_head)
      .field("value_head", c.value_head)
      .field("ham_mlp", c.ham_mlp)
      .field("max_ham_qubits", c.max_ham_qubits)
      .finish();
}

void to_json(json& j, const OptimizerConfig& c) {
  j = json{{"peak_lr", c.peak_lr},   {"weight_decay", c.weight_decay}, {"beta1", c.beta1},
           {"beta2", c.beta2},       {"eps", c.eps},                   {"clip_norm", c.clip_norm},
           {"warmup_steps", c.warmup_steps}};
}

void from_json(const json& j, OptimizerConfig& c) {
  Reader(j, "optimizer")
      .field("peak_lr", c.peak_lr)
      .field("weight_decay", c.weight_decay)
      .field("beta1", c.beta1)
      .field("beta2", c.beta2)
      .field("eps", c.eps)
      .field("clip_norm", c.clip_norm)
      .field("warmup_steps", c.warmup_steps)
      .finish();
}

void to_json(json& j, const SearchConfig& c) {
  j = json{{"c_puct", c.c_puct},
           {"simulations", c.simulations},
           {"dirichlet_alpha", c.dirichlet_alpha},
           {"dirichlet_eps", c.dirichlet_eps},
           {"tau_init", c.tau_init},
           {"tau_final", c.tau_final},
           {"tau_decay_start", c.tau_decay_start},
           {"tau_decay_horizon_fraction", c.tau_decay_horizon_fraction}};
}

void from_json(const json& j, SearchConfig& c) {
  Reader(j, "search")
      .field("c_puct", c.c_puct)
      .field("simulations", c.simulations)
      .field("dirichlet_alpha", c.dirichlet_alpha)
      .field("dirichlet_eps", c.dirichlet_eps)
      .field("tau_init", c.tau_init)
      .field("tau_final", c.tau_final)
      .field("tau_decay_start", c.tau_decay_start)
      .field("tau_decay_horizon_fraction", c.tau_decay_horizon_fraction)
      .finish();
}

void to_json(json& j, const TrainConfig& c) {
  j = json{{"total_episodes", c.total_episodes},
           {"episodes_per_round", c.episodes_per_round},
           {"workers", c.workers},
           {"warmup_simulations", c.warmup_simulations},
           {"standard_simulations", c.standard_simulations},
           {"eval_simulations", c.eval_simulations},
           {"warmup_fraction", c.warmup_fraction},
           {"epochs", c.epochs},
           {"batches_per_epoch", c.batches_per_epoch},
           {"batch_size", c.batch_size},
           {"replay_capacity", c.replay_capacity},
           {"best_capacity", c.best_capacity},
           {"replay_only_after", c.replay_only_after},
           {"mix_after", c.mix_after},
           {"best_game_ratio", c.best_game_ratio},
           {"value_coeff", c.value_coeff},
           {"curriculum", c.curriculum},
           {"boost_fraction", c.boost_fraction},
           {"boost_tau", c.boost_tau},
           {"eval_period", c.eval_period},
           {"eval_dirichlet_alpha", c.eval_dirichlet_alpha},
           {"eval_dirichlet_eps", c.eval_dirichlet_eps},
           {"lr_warmup_steps", c.lr_warmup_steps},
           {"target_accuracy", c.target_accuracy},
           {"checkpoint_period", c.checkpoint_period},
           {"seed", c.seed},
           {"net_seed_offset", c.net_seed_offset},
           {"search", c.search},
           {"net", c.net},
           {"optimizer", c.optimizer}};
}

void from_json(const json& j, TrainConfig& c) {
  Reader(j, "train")
      .field("total_episodes", c.total_episodes)
      .field("episodes_per_round", c.episodes_per_round)
      .field("workers", c.workers)
      .field("warmup_simulations", c.warmup_simulations)
      .field("standard_simulations", c.standard_simulations)
      .field("eval_simulations", c.eval_simulations)
      .field("warmup_fraction", c.warmup_fraction)
      .field("epochs", c.epochs)
      .field("batches_per_epoch", c.batches_per_epoch)
      .field("batch_size", c.batch_size)
      .field("replay_capacity", c.replay_capacity)
      .field("best_capacity", c.best_capacity)
      .field("replay_only_after", c.replay_only_after)
      .field("mix_after", c.mix_after)
      .field("best_game_ratio", c.best_game_ratio)
      .field("value_coeff", c.value_coeff)
      .field("curriculum", c.curriculum)
      .field("boost_fraction", c.boost_fraction)
      .field("boost_tau", c.boost_tau)
      .field("eval_period", c.eval_period)
      .field("eval_dirichlet_alpha", c.eval_dirichlet_alpha)
      .field("eval_dirichlet_eps", c.eval_dirichlet_eps)
      .field("lr_warmup_steps", c.lr_warmup_steps)
      .field("target_accuracy", c.target_accuracy)
      .field("checkpoint_period", c.checkpoint_period)
      .field("seed", c.seed)
      .field("net_seed_offset", c.net_seed_offset)
      .field("search", c.search)
      .field("net", c.net)
      .field("optimizer", c.optimizer)
      .finish();
}

}  // namespace cps
