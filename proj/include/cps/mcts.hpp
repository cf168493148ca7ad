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

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "cps/environment.hpp"
#include "cps/net.hpp"

namespace cps {

struct SearchConfig {
  double c_puct = 1.0;
  /// Simulations per run_search call.
  int simulations = 100;
  double dirichlet_alpha = 0.15;
  double dirichlet_eps = 0.2;
  double tau_init = 1.0;
  double tau_final = 0.75;
  /// First step at which the temperature may drop below tau_init.
  int tau_decay_start = 25;
  /// The decay reaches tau_final at step ceil(fraction * horizon).
  double tau_decay_horizon_fraction = 0.75;

  void validate() const;
};

using VisitCounts = std::array<std::uint32_t, kNumActions>;

/// Priors and value for a prefix. Must be safe to call concurrently.
using PolicyValueFn = std::function<NetOutput(std::span<const GateId>)>;

/// Q + c * P * sqrt(N_parent) / (1 + N_child).
double puct_score(double q, double prior, std::uint32_t parent_visits, std::uint32_t child_visits,
                  double c_puct);

/// pi(a) proportional to N(a)^(1/tau); tau <= 0 gives a one-hot on the first
/// maximal count. Throws std::logic_error when every count is zero.
std::array<double, kNumActions> visit_distribution(const VisitCounts& visits, double tau);

/// Draws from visit_distribution(visits, tau); tau <= 0 is the deterministic argmax.
GateId sample_action(const VisitCounts& visits, double tau, std::mt19937_64& rng);

/// tau_init before min(decay_start, threshold), tau_final from
/// threshold = ceil(fraction * horizon) on, and an exponential ramp between.
double temperature_at(std::size_t step, std::size_t horizon, const SearchConfig& config);

struct SearchNode {
  VisitCounts child_visits{};
  std::array<double, kNumActions> child_value_sum{};
  std::array<float, kNumActions> prior{};      // after root noise
  std::array<float, kNumActions> raw_prior{};  // network output
  std::array<std::unique_ptr<SearchNode>, kNumActions> children;
  /// Own expansion visit plus every backup through this node.
  std::uint32_t visits = 0;
  bool expanded = false;
  bool terminal = false;
  double terminal_value = 0.0;

  double q(int a) const {
    const auto n = child_visits[static_cast<std::size_t>(a)];
    return n == 0 ? 0.0 : child_value_sum[static_cast<std::size_t>(a)] / n;
  }
  std::uint32_t total_child_visits() const;
};

/// One search tree over the episode MDP rooted at the current prefix. Terminal
/// leaves are scored with the environment reward mapped through a normalizer
/// snapshot; other leaves with the network value.
class SearchTree {
 public:
  SearchTree(Environment& env, RewardNormalizer normalizer, std::size_t horizon,
             EvalSource source = EvalSource::kTraining);

  /// Runs config.simulations simulations from the root; on a fresh root the
  /// first one is the root's own expansion. Root priors are re-mixed with new
  /// Dirichlet noise on every call. Throws std::invalid_argument on a terminal root.
  VisitCounts run_search(const PolicyValueFn& net, const SearchConfig& config, std::mt19937_64& rng);

  /// Moves the chosen child's subtree to the root; an unexpanded child gives a
  /// fresh root. Everything else is freed.
  void reroot(GateId action);

  const SearchNode& root() const { return *root_; }
  const std::vector<GateId>& root_prefix() const { return prefix_; }
  std::size_t horizon() const { return horizon_; }
  bool root_is_terminal() const { return prefix_.size() >= horizon_; }
  std::size_t node_count() const;

 private:
  double expand(SearchNode& node, const std::vector<GateId>& prefix, const PolicyValueFn& net);
  void simulate(const PolicyValueFn& net, double c_puct);

  Environment& env_;
  RewardNormalizer normalizer_;
  std::size_t horizon_;
  EvalSource source_;
  std::vector<GateId> prefix_;
  std::unique_ptr<SearchNode> root_;
};

}  // namespace cps
